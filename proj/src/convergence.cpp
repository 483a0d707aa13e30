#include "psifrac/convergence.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "psifrac/error.hpp"
#include "psifrac/frac_derivative.hpp"
#include "psifrac/frac_integral.hpp"
#include "psifrac/grid.hpp"
#include "psifrac/solver.hpp"
#include "psifrac/special_functions.hpp"

namespace psifrac {

namespace {

std::vector<double> unit_nodes(std::size_t n) {
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    return t;
}

double solver_zero_error(const PsiKernel& k, std::size_t n, double alpha, double beta) {
    ProblemSpec p;
    p.k = k;
    p.grid = Grid2D::uniform(1.0, 1.0, n, n);
    p.ord = {alpha, alpha, beta};
    p.rhs = [](double, double, double, double, double) { return 0.0; };
    for (double x : p.grid.x) {
        p.data_h.push_back(std::cos(x));
        p.data_hdd.push_back(-std::cos(x));
    }
    for (double y : p.grid.y) {
        p.data_g1.push_back(1.0 + y);
        p.data_g2.push_back(y * y);
        p.data_g1d.push_back(1.0);
        p.data_g2d.push_back(2.0 * y);
    }
    const SolveResult r = picard_solve(p, BieleckiParams{});
    const double g1 = p.ord.gamma1(), g2 = p.ord.gamma2();
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = p.grid.x[i], px = psi_gamma_weight(k, g1, x);
        for (std::size_t j = 0; j < n; ++j) {
            const double y = p.grid.y[j], py = psi_gamma_weight(k, g2, y);
            const double u = py * std::cos(x) + px * (1.0 + y) + px * x * y * y;
            const double u1 = px * 1.0 + px * x * 2.0 * y;
            const double u2 = py * -std::cos(x);
            err = std::max({err, std::abs(r.sol.u(i, j) - u), std::abs(r.sol.u1(i, j) - u1), std::abs(r.sol.u2(i, j) - u2)});
        }
    }
    return err;
}

}  // namespace

double oracle_error(const OracleSpec& o, const PsiKernel& k, std::size_t n) {
    const std::vector<double> t = unit_nodes(n);
    require_kernel_covers(k, 1.0);
    const std::vector<double> tau = psi_nodes(k, t);
    double err = 0.0;
    if (o.name == "power" || o.name == "constant") {
        const double P = o.name == "constant" ? 0.0 : (o.param < 0.0 ? 2.0 : o.param);
        std::vector<double> f(n);
        for (std::size_t i = 0; i < n; ++i) f[i] = std::pow(tau[i], P);
        const std::vector<double> g = product_weights(tau, o.alpha).apply(f);
        const double c = gamma_fn(P + 1.0) / gamma_fn(P + 1.0 + o.alpha);
        for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(g[i] - c * std::pow(tau[i], P + o.alpha)));
    } else if (o.name == "trapezoid") {
        std::vector<double> f(n);
        for (std::size_t i = 0; i < n; ++i) f[i] = std::exp(t[i]);
        const std::vector<double> g = product_weights(t, 1.0).apply(f);
        for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(g[i] - std::expm1(t[i])));
    } else if (o.name == "hilfer-power") {
        const double P = o.param < 0.0 ? 2.5 : o.param;
        std::vector<double> f(n);
        for (std::size_t i = 0; i < n; ++i) f[i] = std::pow(tau[i], P - 1.0);
        const std::vector<double> d = hilfer_1d(k, o.alpha, o.beta, t, f);
        const double c = gamma_fn(P) / gamma_fn(P - o.alpha);
        for (std::size_t i = n / 10; i < n - n / 10; ++i)
            err = std::max(err, std::abs(d[i] - c * std::pow(tau[i], P - o.alpha - 1.0)));
    } else if (o.name == "solver-zero") {
        err = solver_zero_error(k, n, o.alpha, o.beta);
    } else {
        throw ParseError("unknown oracle '" + o.name + "' (expected power, constant, trapezoid, hilfer-power, solver-zero)");
    }
    return err;
}

std::vector<ConvergenceRow> convergence_table(const OracleSpec& o, const PsiKernel& k, const std::vector<std::size_t>& ns) {
    std::vector<ConvergenceRow> rows;
    for (std::size_t n : ns) rows.push_back({n, oracle_error(o, k, n), std::numeric_limits<double>::quiet_NaN(), false});
    constexpr double floor = 1e-13;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        rows[r].saturated = rows[r].sup_error < floor;
        if (r + 1 < rows.size()) {
            if (rows[r].saturated || rows[r + 1].sup_error < floor) rows[r].saturated = true;
            else rows[r].observed_rate = std::log2(rows[r].sup_error / rows[r + 1].sup_error);
        }
    }
    return rows;
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
    os << "n,sup_error,observed_rate\n";
    for (const auto& r : rows) {
        os << r.n << ',' << format_double(r.sup_error) << ',';
        if (r.saturated) os << "saturated";
        else if (!std::isnan(r.observed_rate)) os << format_double(r.observed_rate);
        os << '\n';
    }
}

}  // namespace psifrac
