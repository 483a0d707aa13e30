#include "psifrac/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "psifrac/error.hpp"
#include "psifrac/expr.hpp"

namespace psifrac {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
    return s;
}

const std::set<std::string> kKnownKeys = {
    "nx", "ny", "a", "b", "alpha", "alpha1", "alpha2", "beta", "delta", "tol", "max_iter", "psi",
    "psi_max", "f", "lipschitz", "h", "hdd", "g1", "g2", "g1d", "g2d", "seed", "name",
};

std::vector<double> read_series_csv(const std::string& path, std::size_t n) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open data file '" + path + "'");
    std::string line;
    if (!std::getline(is, line) || trim(line) != "t,value") throw ParseError("data file '" + path + "' needs header 't,value'");
    std::vector<double> v;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ParseError("data file '" + path + "': expected 2 columns");
        v.push_back(parse_double(line.substr(comma + 1), "data value in " + path));
    }
    if (v.size() != n) throw GridMismatchError("data file '" + path + "' has " + std::to_string(v.size()) +
                                               " rows, expected " + std::to_string(n));
    return v;
}

// Inline "[v0, v1, ...]", "file:PATH" or an expression in t.
std::vector<double> data_array(const std::string& key, const std::string& value, const std::vector<double>& nodes,
                               const std::string& base_dir) {
    const std::string s = trim(value);
    if (!s.empty() && s.front() == '[') {
        if (s.back() != ']') throw ParseError("data array '" + key + "' is missing ']'");
        std::vector<double> v;
        std::stringstream ss(s.substr(1, s.size() - 2));
        std::string item;
        while (std::getline(ss, item, ','))
            if (!trim(item).empty()) v.push_back(parse_double(item, "data array " + key));
        if (v.size() != nodes.size())
            throw GridMismatchError("data array '" + key + "' has " + std::to_string(v.size()) + " entries, expected " +
                                    std::to_string(nodes.size()));
        return v;
    }
    if (s.rfind("file:", 0) == 0) {
        std::filesystem::path p = s.substr(5);
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        return read_series_csv(p.string(), nodes.size());
    }
    const Expression e(s, {"t"});
    std::vector<double> v(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) v[i] = e.eval(&nodes[i]);
    return v;
}

}  // namespace

double parse_double(const std::string& s, const std::string& what) {
    const std::string t = trim(s);
    try {
        std::size_t used = 0;
        const double v = std::stod(t, &used);
        if (used == t.size()) return v;
    } catch (const std::exception&) {
    }
    throw ParseError("cannot parse " + what + " '" + s + "' as a number");
}

long parse_int(const std::string& s, const std::string& what) {
    const std::string t = trim(s);
    try {
        std::size_t used = 0;
        const long v = std::stol(t, &used);
        if (used == t.size()) return v;
    } catch (const std::exception&) {
    }
    throw ParseError("cannot parse " + what + " '" + s + "' as an integer");
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        // Strip comments outside quotes.
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') quoted = !quoted;
            if (line[i] == '#' && !quoted) {
                line.resize(i);
                break;
            }
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = unquote(trim(line.substr(eq + 1)));
        if (key.empty()) throw ParseError("config line " + std::to_string(lineno) + ": empty key");
        if (!kv.emplace(key, value).second) throw ParseError("config key '" + key + "' repeated");
    }
    return kv;
}

bool make_rhs(const std::string& spec_in, Rhs& rhs, double& lipschitz) {
    const std::string spec = trim(spec_in);
    if (spec == "zero") {
        rhs = [](double, double, double, double, double) { return 0.0; };
        lipschitz = 0.0;
        return true;
    }
    if (spec.rfind("constant:", 0) == 0) {
        const double c = parse_double(spec.substr(9), "constant rhs");
        rhs = [c](double, double, double, double, double) { return c; };
        lipschitz = 0.0;
        return true;
    }
    if (spec.rfind("linear_u:", 0) == 0) {
        const double lam = parse_double(spec.substr(9), "linear_u coefficient");
        rhs = [lam](double, double, double u, double, double) { return lam * u; };
        lipschitz = std::abs(lam);
        return true;
    }
    auto e = std::make_shared<Expression>(spec, std::vector<std::string>{"x", "y", "u", "u1", "u2"});
    rhs = [e](double x, double y, double u, double u1, double u2) {
        const double v[5] = {x, y, u, u1, u2};
        return e->eval(v);
    };
    return false;
}

ProblemConfig problem_from_keys(const std::map<std::string, std::string>& kv, const std::string& base_dir) {
    for (const auto& [k, v] : kv)
        if (!kKnownKeys.count(k)) throw ParseError("unknown config key '" + k + "'");
    auto get = [&](const std::string& k, const std::string& def) {
        auto it = kv.find(k);
        return it == kv.end() ? def : it->second;
    };
    ProblemConfig c;
    c.raw = kv;
    const long nx = parse_int(get("nx", "65"), "nx");
    const long ny = parse_int(get("ny", "65"), "ny");
    if (nx < 3 || ny < 3 || nx > 4097 || ny > 4097) throw DomainError("nx and ny must lie in [3, 4097]");
    const double a = parse_double(get("a", "1"), "a");
    const double b = parse_double(get("b", "1"), "b");
    c.spec.grid = Grid2D::uniform(a, b, static_cast<std::size_t>(nx), static_cast<std::size_t>(ny));

    const std::string alpha = get("alpha", "1");
    c.spec.ord.alpha1 = parse_double(get("alpha1", alpha), "alpha1");
    c.spec.ord.alpha2 = parse_double(get("alpha2", alpha), "alpha2");
    c.spec.ord.beta = parse_double(get("beta", "0"), "beta");
    c.spec.ord.validate();

    c.bp.delta = parse_double(get("delta", "4"), "delta");
    c.bp.tol = parse_double(get("tol", "1e-10"), "tol");
    c.bp.max_iter = static_cast<int>(parse_int(get("max_iter", "200"), "max_iter"));

    c.psi_spec = get("psi", "identity");
    const double psi_max = parse_double(get("psi_max", "50"), "psi_max");
    c.spec.k = make_builtin(c.psi_spec, 0.0, psi_max);

    c.f_spec = get("f", "zero");
    const bool derived = make_rhs(c.f_spec, c.spec.rhs, c.spec.lipschitz);
    if (kv.count("lipschitz")) c.spec.lipschitz = parse_double(kv.at("lipschitz"), "lipschitz");
    else if (!derived) throw ParseError("custom rhs '" + c.f_spec + "' needs a 'lipschitz' key");

    const Grid2D& g = c.spec.grid;
    if (kv.count("h")) c.spec.data_h = data_array("h", kv.at("h"), g.x, base_dir);
    if (kv.count("hdd")) c.spec.data_hdd = data_array("hdd", kv.at("hdd"), g.x, base_dir);
    if (kv.count("g1")) c.spec.data_g1 = data_array("g1", kv.at("g1"), g.y, base_dir);
    if (kv.count("g2")) c.spec.data_g2 = data_array("g2", kv.at("g2"), g.y, base_dir);
    if (kv.count("g1d")) c.spec.data_g1d = data_array("g1d", kv.at("g1d"), g.y, base_dir);
    if (kv.count("g2d")) c.spec.data_g2d = data_array("g2d", kv.at("g2d"), g.y, base_dir);
    c.spec.normalize();
    return c;
}

ProblemConfig load_problem_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open config '" + path + "'");
    std::stringstream ss;
    ss << is.rdbuf();
    const std::string dir = std::filesystem::path(path).parent_path().string();
    return problem_from_keys(parse_key_values(ss.str()), dir.empty() ? "." : dir);
}

}  // namespace psifrac
