#include "psifrac/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "psifrac/error.hpp"

namespace psifrac {

namespace {

void check_nodes(const std::vector<double>& n, const char* axis) {
    if (n.size() < 2) throw DomainError(std::string(axis) + " grid needs at least 2 nodes");
    if (n.front() != 0.0) throw DomainError(std::string(axis) + " grid must start at 0");
    for (std::size_t i = 1; i < n.size(); ++i)
        if (!(n[i] > n[i - 1]) || !std::isfinite(n[i]))
            throw DomainError(std::string(axis) + " grid nodes must be strictly increasing and finite");
}

std::vector<double> linspace(double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = hi * static_cast<double>(i) / static_cast<double>(n - 1);
    v.back() = hi;
    return v;
}

}  // namespace

Grid2D::Grid2D(std::vector<double> x_nodes, std::vector<double> y_nodes)
    : x(std::move(x_nodes)), y(std::move(y_nodes)) {
    check_nodes(x, "x");
    check_nodes(y, "y");
}

Grid2D Grid2D::uniform(double a, double b, std::size_t nx, std::size_t ny) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("grid extents must be positive");
    if (nx < 2 || ny < 2) throw DomainError("grid needs at least 2 nodes per axis");
    return Grid2D(linspace(a, nx), linspace(b, ny));
}

Grid2D Grid2D::graded(double a, double b, std::size_t nx, std::size_t ny, double r) {
    if (!(r >= 1.0)) throw DomainError("grading exponent must be >= 1");
    Grid2D g = uniform(a, b, nx, ny);
    for (double& x : g.x) x = a * std::pow(x / a, r);
    for (double& y : g.y) y = b * std::pow(y / b, r);
    g.x.back() = a;
    g.y.back() = b;
    return Grid2D(std::move(g.x), std::move(g.y));
}

Field2D::Field2D(Grid2D g, double fill) : grid(std::move(g)), values(grid.size(), fill) {}

Field2D::Field2D(Grid2D g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.size()) throw GridMismatchError("field value count does not match grid");
}

void Field2D::check_finite(const char* what) const {
    for (double v : values)
        if (!std::isfinite(v)) throw DomainError(std::string(what) + " contains non-finite values");
}

double Field2D::sup_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

void require_same_grid(const Field2D& a, const Field2D& b) {
    if (!(a.grid == b.grid)) throw GridMismatchError("fields live on different grids");
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_field_csv(std::ostream& os, const Field2D& f) {
    os << "x,y,value\n";
    for (std::size_t i = 0; i < f.nx(); ++i)
        for (std::size_t j = 0; j < f.ny(); ++j)
            os << format_double(f.grid.x[i]) << ',' << format_double(f.grid.y[j]) << ','
               << format_double(f(i, j)) << '\n';
}

void write_field_csv(const std::string& path, const Field2D& f) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    write_field_csv(os, f);
    if (!os) throw IoError("failed writing '" + path + "'");
}

namespace {

double parse_number(const std::string& s, std::size_t line) {
    double v = 0.0;
    const char* b = s.data();
    const char* e = b + s.size();
    while (b < e && (*b == ' ' || *b == '\t')) ++b;
    while (e > b && (e[-1] == ' ' || e[-1] == '\t' || e[-1] == '\r')) --e;
    auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e)
        throw ParseError("CSV line " + std::to_string(line) + ": cannot parse number '" + s + "'");
    return v;
}

}  // namespace

Field2D read_field_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError("empty CSV input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "x,y,value") throw ParseError("CSV header must be 'x,y,value'");
    std::vector<double> xs, ys, vs;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        std::stringstream ss(line);
        std::string c[3];
        for (auto& cell : c)
            if (!std::getline(ss, cell, ',')) throw ParseError("CSV line " + std::to_string(lineno) + ": expected 3 columns");
        xs.push_back(parse_number(c[0], lineno));
        ys.push_back(parse_number(c[1], lineno));
        vs.push_back(parse_number(c[2], lineno));
    }
    std::vector<double> ux = xs, uy = ys;
    std::sort(ux.begin(), ux.end());
    ux.erase(std::unique(ux.begin(), ux.end()), ux.end());
    std::sort(uy.begin(), uy.end());
    uy.erase(std::unique(uy.begin(), uy.end()), uy.end());
    Grid2D g(ux, uy);
    if (vs.size() != g.size()) throw ParseError("CSV does not cover a full tensor grid");
    Field2D f(g);
    std::vector<char> seen(g.size(), 0);
    for (std::size_t r = 0; r < vs.size(); ++r) {
        const std::size_t i = static_cast<std::size_t>(std::lower_bound(ux.begin(), ux.end(), xs[r]) - ux.begin());
        const std::size_t j = static_cast<std::size_t>(std::lower_bound(uy.begin(), uy.end(), ys[r]) - uy.begin());
        if (seen[i * g.ny() + j]) throw ParseError("CSV repeats node (" + format_double(xs[r]) + "," + format_double(ys[r]) + ")");
        seen[i * g.ny() + j] = 1;
        f(i, j) = vs[r];
    }
    f.check_finite("CSV field");
    return f;
}

Field2D read_field_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open '" + path + "'");
    return read_field_csv(is);
}

}  // namespace psifrac
