// psifrac command-line front end. Every command is a thin wrapper over the library.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "psifrac/certifier.hpp"
#include "psifrac/config.hpp"
#include "psifrac/convergence.hpp"
#include "psifrac/error.hpp"
#include "psifrac/frac_derivative.hpp"
#include "psifrac/frac_integral.hpp"
#include "psifrac/gronwall.hpp"
#include "psifrac/solver.hpp"

using namespace psifrac;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitVerdict = 4;

int exit_code_for(ErrorCode c) {
    return c == ErrorCode::NonConvergence ? kExitNonConvergence : kExitValidation;
}

void diagnose(const std::string& code, const std::string& msg) {
    std::string one_line = msg;
    for (char& ch : one_line)
        if (ch == '\n') ch = ' ';
    std::cerr << "ERROR " << code << ' ' << one_line << '\n';
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream os(path);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    os << text;
}

void emit_field(const std::string& path, const Field2D& f) {
    if (path.empty() || path == "-") write_field_csv(std::cout, f);
    else write_field_csv(path, f);
}

std::string fixed10(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10f", v);
    return buf;
}

struct FracIntArgs {
    std::string psi = "identity";
    double alpha = 0.5, alpha2 = -1.0, cst = 0.0, x = -1.0;
    bool have_const = false;
    std::string field, axis = "x", out;
    std::size_t n = 129;
};

int run_frac_int(const FracIntArgs& a) {
    const PsiKernel k = make_builtin(a.psi);
    if (!a.field.empty()) {
        const Field2D f = read_field_csv(a.field);
        Field2D g;
        if (a.axis == "x") g = frac_int_x(k, a.alpha, f);
        else if (a.axis == "y") g = frac_int_y(k, a.alpha, f);
        else if (a.axis == "2d") g = frac_int_2d(k, {a.alpha, a.alpha2 > 0 ? a.alpha2 : a.alpha, 0.0}, f);
        else throw ParseError("--axis must be x, y or 2d");
        emit_field(a.out, g);
        return 0;
    }
    if (!a.have_const || !(a.x > 0.0)) throw ParseError("frac-int needs --field FILE, or --const C with --x X > 0");
    std::vector<double> t(a.n), f(a.n, a.cst);
    for (std::size_t i = 0; i < a.n; ++i) t[i] = a.x * static_cast<double>(i) / static_cast<double>(a.n - 1);
    t.back() = a.x;
    const std::vector<double> g = frac_int_1d(k, a.alpha, t, f);
    std::cout << fixed10(g.back()) << '\n';
    return 0;
}

struct FracDerArgs {
    std::string psi = "identity";
    double alpha = 0.5, alpha2 = -1.0, beta = 0.0, weight = 0.0, weight2 = 0.0, power = -1.0, x = -1.0;
    std::string field, axis = "x", out;
    std::size_t n = 257;
};

int run_frac_der(const FracDerArgs& a) {
    const PsiKernel k = make_builtin(a.psi);
    if (!a.field.empty()) {
        const Field2D f = read_field_csv(a.field);
        Field2D g;
        if (a.axis == "x") g = hilfer_dx(k, a.alpha, a.beta, f, a.weight);
        else if (a.axis == "y") g = hilfer_dy(k, a.alpha, a.beta, f, a.weight);
        else if (a.axis == "mixed")
            g = hilfer_mixed(k, {a.alpha, a.alpha2 > 0 ? a.alpha2 : a.alpha, a.beta}, f, a.weight, a.weight2);
        else throw ParseError("--axis must be x, y or mixed");
        emit_field(a.out, g);
        return 0;
    }
    if (!(a.power > 0.0) || !(a.x > 0.0)) throw ParseError("frac-der needs --field FILE, or --power P with --x X > 0");
    // Derivative of (psi - psi(0))^(P-1) on [0, x], carried as a weight so
    // singular powers are represented exactly.
    std::vector<double> t(a.n), one(a.n, 1.0);
    for (std::size_t i = 0; i < a.n; ++i) t[i] = a.x * static_cast<double>(i) / static_cast<double>(a.n - 1);
    t.back() = a.x;
    const std::vector<double> d = hilfer_1d(k, a.alpha, a.beta, t, one, a.power - 1.0);
    std::cout << fixed10(d.back()) << '\n';
    return 0;
}

int run_solve(const std::string& config, const std::string& out_dir) {
    const ProblemConfig c = load_problem_config(config);
    const SolveResult r = picard_solve(c.spec, c.bp);
    for (const auto& w : r.warnings) std::cerr << "WARN contraction " << w << '\n';
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    write_field_csv((dir / "u.csv").string(), r.sol.u);
    write_field_csv((dir / "u1.csv").string(), r.sol.u1);
    write_field_csv((dir / "u2.csv").string(), r.sol.u2);
    json j;
    j["iters"] = r.iters;
    j["residuals"] = r.residuals;
    j["bielecki_delta"] = r.delta;
    j["contraction_ratio"] = r.contraction_ratio;
    j["contraction_bound"] = r.contraction_bound;
    j["warnings"] = r.warnings;
    write_text((dir / "report.json").string(), j.dump(2) + "\n");
    return 0;
}

json report_json(const GronwallReport& r) {
    json j;
    j["hypotheses_ok"] = r.hypotheses_ok;
    if (!r.hypotheses_ok) j["hypothesis"] = r.hypothesis;
    j["premise_satisfied"] = r.premise_satisfied;
    j["holds"] = r.holds;
    j["max_violation"] = r.max_violation;
    j["v_nondecreasing"] = r.v_nondecreasing;
    return j;
}

int run_gronwall(const std::string& data, const std::string& psi, double alpha, int random, std::uint64_t seed,
                 const std::string& out) {
    if (random > 0) {
        const GronwallCampaign c = gronwall_random_campaign(random, seed);
        json j;
        j["cases"] = c.cases;
        j["seed"] = seed;
        j["violations"] = c.violations;
        j["premise_failures"] = c.premise_failures;
        j["direct_solves"] = c.direct_solves;
        j["worst_relative_excess"] = c.worst_relative_excess;
        json fails = json::array();
        for (const auto& f : c.failing)
            fails.push_back({{"psi", f.psi}, {"alpha", f.alpha}, {"t_end", f.t_end}, {"n", f.n}, {"h_sup", f.h_sup},
                             {"relative_excess", f.relative_excess}});
        j["failing"] = fails;
        write_text(out, j.dump(2) + "\n");
        return c.violations == 0 ? 0 : kExitVerdict;
    }
    if (data.empty()) throw ParseError("gronwall needs --data FILE or --random N");
    std::ifstream is(data);
    if (!is) throw IoError("cannot open '" + data + "'");
    std::string line;
    std::getline(is, line);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,u,v,h") throw ParseError("gronwall data needs header 't,u,v,h'");
    GronwallData d{{}, {}, {}, {}, make_builtin(psi), alpha};
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(parse_double(cell, "gronwall data"));
        if (row.size() != 4) throw ParseError("gronwall data rows need 4 columns");
        d.t.push_back(row[0]);
        d.u.push_back(row[1]);
        d.v.push_back(row[2]);
        d.h.push_back(row[3]);
    }
    const GronwallReport r = check_gronwall(d);
    write_text(out, report_json(r).dump(2) + "\n");
    if (!r.hypotheses_ok) throw HypothesisError(r.hypothesis);
    return r.holds ? 0 : kExitVerdict;
}

int run_certify(const std::string& mode, const std::string& config, double epsilon, const std::string& phi,
                int trials, std::uint64_t seed, const std::string& out) {
    const ProblemConfig c = load_problem_config(config);
    Certificate cert;
    if (mode == "uh") {
        cert = certify_uh(c.spec, c.bp, epsilon, trials, seed);
    } else {
        const Field2D f = read_field_csv(phi);
        cert = certify_uhr(c.spec, c.bp, f, trials, seed, phi);
    }
    write_text(out, certificate_json(cert));
    if (!cert.all_pass()) {
        diagnose("verdict", "certificate has failing verdicts or trials");
        return kExitVerdict;
    }
    return 0;
}

int run_convergence(const OracleSpec& o, const std::string& psi, const std::string& out) {
    const PsiKernel k = make_builtin(psi);
    std::ostringstream os;
    write_convergence_csv(os, convergence_table(o, k));
    write_text(out, os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"psi-fractional operators, Picard solver and stability certificates"};
    app.require_subcommand(1);

    FracIntArgs fi;
    auto* c_int = app.add_subcommand("frac-int", "psi-fractional integral of a constant or a CSV field");
    c_int->add_option("--psi", fi.psi, "kernel: identity | power:RHO | log_shift | bounded_exp");
    c_int->add_option("--alpha", fi.alpha, "order in (0,1]");
    c_int->add_option("--alpha2", fi.alpha2, "y order for --axis 2d (defaults to --alpha)");
    auto* opt_const = c_int->add_option("--const", fi.cst, "constant integrand");
    c_int->add_option("--x", fi.x, "evaluation point for --const");
    c_int->add_option("--n", fi.n, "nodes on [0, x] for --const")->check(CLI::Range(3, 100000));
    c_int->add_option("--field", fi.field, "input field CSV (x,y,value)");
    c_int->add_option("--axis", fi.axis, "x | y | 2d");
    c_int->add_option("--out", fi.out, "output CSV (default stdout)");

    FracDerArgs fd;
    auto* c_der = app.add_subcommand("frac-der", "psi-Hilfer derivative of a power function or a CSV field");
    c_der->add_option("--psi", fd.psi, "kernel spec");
    c_der->add_option("--alpha", fd.alpha, "order in (0,1)");
    c_der->add_option("--alpha2", fd.alpha2, "y order for --axis mixed");
    c_der->add_option("--beta", fd.beta, "type in [0,1]");
    c_der->add_option("--power", fd.power, "differentiate (psi - psi(0))^(P-1)");
    c_der->add_option("--x", fd.x, "evaluation point for --power");
    c_der->add_option("--n", fd.n, "nodes on [0, x] for --power")->check(CLI::Range(3, 100000));
    c_der->add_option("--field", fd.field, "input field CSV");
    c_der->add_option("--weight", fd.weight, "field is (psi(x)-psi(0))^W times the CSV values");
    c_der->add_option("--weight2", fd.weight2, "y weight exponent for --axis mixed");
    c_der->add_option("--axis", fd.axis, "x | y | mixed");
    c_der->add_option("--out", fd.out, "output CSV (default stdout)");

    std::string solve_config, solve_out = "solution";
    auto* c_solve = app.add_subcommand("solve", "Picard solve of a problem config");
    c_solve->add_option("--config", solve_config, "problem config file")->required();
    c_solve->add_option("--out-dir", solve_out, "directory for u.csv, u1.csv, u2.csv, report.json");

    std::string g_data, g_psi = "identity", g_out;
    double g_alpha = 1.0;
    int g_random = 0;
    std::uint64_t g_seed = 20240601;
    auto* c_gr = app.add_subcommand("gronwall", "check the psi-Gronwall bound on data or random equality cases");
    c_gr->add_option("--data", g_data, "CSV with header t,u,v,h");
    c_gr->add_option("--psi", g_psi, "kernel spec for --data");
    c_gr->add_option("--alpha", g_alpha, "order for --data");
    c_gr->add_option("--random", g_random, "run N random equality cases instead");
    c_gr->add_option("--seed", g_seed, "seed for --random");
    c_gr->add_option("--out", g_out, "output JSON (default stdout)");

    std::string cert_config, cert_phi, cert_out;
    double cert_eps = 0.01;
    int cert_trials = 5;
    std::uint64_t cert_seed = 20240601;
    auto* c_cert = app.add_subcommand("certify", "stability certificate campaign");
    c_cert->require_subcommand(1);
    auto* c_uh = c_cert->add_subcommand("uh", "Ulam-Hyers certificate");
    c_uh->add_option("--config", cert_config, "problem config")->required();
    c_uh->add_option("--epsilon", cert_eps, "perturbation bound")->required();
    c_uh->add_option("--trials", cert_trials, "number of perturbations")->check(CLI::PositiveNumber);
    c_uh->add_option("--seed", cert_seed, "random seed");
    c_uh->add_option("--out", cert_out, "certificate JSON (default stdout)");
    auto* c_uhr = c_cert->add_subcommand("uhr", "generalized Ulam-Hyers-Rassias certificate");
    c_uhr->add_option("--config", cert_config, "problem config")->required();
    c_uhr->add_option("--phi", cert_phi, "comparison function CSV on the problem grid")->required();
    c_uhr->add_option("--trials", cert_trials, "number of perturbations")->check(CLI::PositiveNumber);
    c_uhr->add_option("--seed", cert_seed, "random seed");
    c_uhr->add_option("--out", cert_out, "certificate JSON (default stdout)");

    OracleSpec oracle;
    std::string conv_psi = "identity", conv_out;
    auto* c_conv = app.add_subcommand("convergence", "observed convergence rates against a closed-form oracle");
    c_conv->add_option("--oracle", oracle.name, "power | constant | trapezoid | hilfer-power | solver-zero");
    c_conv->add_option("--psi", conv_psi, "kernel spec");
    c_conv->add_option("--alpha", oracle.alpha, "order");
    c_conv->add_option("--beta", oracle.beta, "type (hilfer-power, solver-zero)");
    c_conv->add_option("--param", oracle.param, "oracle exponent P");
    c_conv->add_option("--out", conv_out, "output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        diagnose("usage", e.what());
        return kExitValidation;
    }
    fi.have_const = opt_const->count() > 0;

    try {
        if (*c_int) return run_frac_int(fi);
        if (*c_der) return run_frac_der(fd);
        if (*c_solve) return run_solve(solve_config, solve_out);
        if (*c_gr) return run_gronwall(g_data, g_psi, g_alpha, g_random, g_seed, g_out);
        if (*c_uh) return run_certify("uh", cert_config, cert_eps, "", cert_trials, cert_seed, cert_out);
        if (*c_uhr) return run_certify("uhr", cert_config, 0.0, cert_phi, cert_trials, cert_seed, cert_out);
        if (*c_conv) return run_convergence(oracle, conv_psi, conv_out);
    } catch (const Error& e) {
        diagnose(error_code_name(e.code()), e.what());
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        diagnose("internal", e.what());
        return kExitValidation;
    }
    return 0;
}
