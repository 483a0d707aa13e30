#include "psifrac/frac_derivative.hpp"

#include <cmath>
#include <string>

#include "psifrac/error.hpp"
#include "psifrac/special_functions.hpp"

namespace psifrac {

namespace {

constexpr double kTraceEps = 1e-12;

void check_orders(double alpha, double beta) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("Hilfer order must lie in (0,1), got " + std::to_string(alpha));
    if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("Hilfer type beta must lie in [0,1]");
}

// tau^(nu-1)/Gamma(nu); the nu = 0 limit is the zero function.
double boundary_kernel(double nu, double tau) {
    if (nu == 0.0) return 0.0;
    return std::pow(tau, nu - 1.0) / gamma_fn(nu);
}

// Value at node 0 from nodes 1 and 2, linear in tau.
double extrapolate0(const std::vector<double>& tau, double v1, double v2) {
    return v1 + (v1 - v2) * (tau[1] - tau[0]) / (tau[2] - tau[1]);
}

void require_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) throw DomainError("Hilfer derivative produced non-finite values");
}

struct Axis {
    std::vector<double> tau;
    VolterraMatrix w;  // weighted I^{1-alpha}
    double c;          // trace factor
    double nu;
    double q;          // I^{1-alpha}(tau^p phi) ~ kappa phi(0) tau^q near the origin
    double kappa;
};

// Derivative of G = tau^q H with the leading power handled analytically:
// H is smooth where G is not, so only H is differenced. h0 = H(0).
std::vector<double> d_tau_factored(const Axis& ax, const std::vector<double>& g, double h0) {
    if (ax.q == 0.0) return d_tau(ax.tau, g);
    const std::size_t n = g.size();
    std::vector<double> h(n), pw(n);
    h[0] = h0;
    for (std::size_t i = 1; i < n; ++i) {
        pw[i] = std::pow(ax.tau[i], ax.q);
        h[i] = g[i] / pw[i];
    }
    const std::vector<double> dh = d_tau(ax.tau, h);
    std::vector<double> d(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) d[i] = ax.q * pw[i] / ax.tau[i] * h[i] + pw[i] * dh[i];
    return d;
}

Axis make_axis(const PsiKernel& k, const std::vector<double>& t, double alpha, double beta, double p) {
    check_orders(alpha, beta);
    if (t.size() < 3) throw DomainError("Hilfer derivative needs at least 3 nodes per axis");
    require_kernel_covers(k, t.back());
    Axis ax;
    ax.tau = psi_nodes(k, t);
    const double mu = (1.0 - beta) * (1.0 - alpha);
    ax.nu = beta * (1.0 - alpha);
    ax.c = hilfer_trace_factor(p, mu);
    ax.w = weighted_product_weights(ax.tau, 1.0 - alpha, p);
    ax.q = p + 1.0 - alpha;
    ax.kappa = gamma_fn(p + 1.0) / gamma_fn(ax.q + 1.0);
    return ax;
}

// d/dtau I^{1-alpha} - trace term, for one line of samples phi.
std::vector<double> apply_axis(const Axis& ax, const std::vector<double>& phi) {
    std::vector<double> r = d_tau_factored(ax, ax.w.apply(phi), ax.kappa * phi[0]);
    if (ax.c != 0.0)
        for (std::size_t i = 1; i < r.size(); ++i) r[i] -= ax.c * phi[0] * boundary_kernel(ax.nu, ax.tau[i]);
    r[0] = extrapolate0(ax.tau, r[1], r[2]);
    require_finite(r);
    return r;
}

}  // namespace

double hilfer_trace_factor(double p, double mu) {
    const double s = p + mu;
    if (std::abs(s) <= kTraceEps) return gamma_fn(p + 1.0) / gamma_fn(p + 1.0 + mu);
    if (s > 0.0) return 0.0;
    throw DomainError("field singularity tau^" + std::to_string(p) + " is too strong for this derivative");
}

std::vector<double> d_tau(const std::vector<double>& tau, const std::vector<double>& g) {
    const std::size_t n = tau.size();
    if (n < 3 || g.size() != n) throw DomainError("d_tau needs 3+ matching nodes");
    std::vector<double> d(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h1 = tau[i] - tau[i - 1], h2 = tau[i + 1] - tau[i];
        d[i] = -h2 / (h1 * (h1 + h2)) * g[i - 1] + (h2 - h1) / (h1 * h2) * g[i] + h1 / (h2 * (h1 + h2)) * g[i + 1];
    }
    {
        const double h1 = tau[1] - tau[0], h2 = tau[2] - tau[1];
        d[0] = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * g[0] + (h1 + h2) / (h1 * h2) * g[1] - h1 / (h2 * (h1 + h2)) * g[2];
    }
    {
        const double h1 = tau[n - 2] - tau[n - 3], h2 = tau[n - 1] - tau[n - 2];
        d[n - 1] = h2 / (h1 * (h1 + h2)) * g[n - 3] - (h1 + h2) / (h1 * h2) * g[n - 2] +
                   (2.0 * h2 + h1) / (h2 * (h1 + h2)) * g[n - 1];
    }
    return d;
}

std::vector<double> hilfer_1d(const PsiKernel& k, double alpha, double beta, const std::vector<double>& t,
                              const std::vector<double>& phi, double p) {
    if (phi.size() != t.size()) throw GridMismatchError("node and value arrays differ in length");
    return apply_axis(make_axis(k, t, alpha, beta, p), phi);
}

Field2D hilfer_dx(const PsiKernel& k, double alpha, double beta, const Field2D& f, double p) {
    const Axis ax = make_axis(k, f.grid.x, alpha, beta, p);
    Field2D out(f.grid);
    std::vector<double> line(f.nx());
    for (std::size_t j = 0; j < f.ny(); ++j) {
        for (std::size_t i = 0; i < f.nx(); ++i) line[i] = f(i, j);
        const std::vector<double> r = apply_axis(ax, line);
        for (std::size_t i = 0; i < f.nx(); ++i) out(i, j) = r[i];
    }
    return out;
}

Field2D hilfer_dy(const PsiKernel& k, double alpha, double beta, const Field2D& f, double p) {
    const Axis ax = make_axis(k, f.grid.y, alpha, beta, p);
    Field2D out(f.grid);
    std::vector<double> line(f.ny());
    for (std::size_t i = 0; i < f.nx(); ++i) {
        for (std::size_t j = 0; j < f.ny(); ++j) line[j] = f(i, j);
        const std::vector<double> r = apply_axis(ax, line);
        for (std::size_t j = 0; j < f.ny(); ++j) out(i, j) = r[j];
    }
    return out;
}

Field2D hilfer_mixed(const PsiKernel& k, const FracOrder& ord, const Field2D& f, double p1, double p2) {
    const Axis ax = make_axis(k, f.grid.x, ord.alpha1, ord.beta, p1);
    const Axis ay = make_axis(k, f.grid.y, ord.alpha2, ord.beta, p2);
    const std::size_t nx = f.nx(), ny = f.ny();

    // Edge lines: the x-integral along y = 0 and the y-integral along x = 0,
    // with their derivatives. They fix the leading-power limits below.
    std::vector<double> phi_x0(nx), phi_y0(ny);
    for (std::size_t i = 0; i < nx; ++i) phi_x0[i] = f(i, 0);
    for (std::size_t j = 0; j < ny; ++j) phi_y0[j] = f(0, j);
    const std::vector<double> ix0 = ax.w.apply(phi_x0);
    const std::vector<double> edge_x = d_tau_factored(ax, ix0, ax.kappa * f(0, 0));
    const std::vector<double> edge_y = d_tau_factored(ay, ay.w.apply(phi_y0), ay.kappa * f(0, 0));

    // d_x d_y of the order-(1-alpha) double integral.
    Field2D g = apply_y(ay.w, apply_x(ax.w, f));
    Field2D out(f.grid);
    for (std::size_t i = 0; i < nx; ++i) {
        std::vector<double> col(g.values.begin() + i * ny, g.values.begin() + (i + 1) * ny);
        const std::vector<double> d = d_tau_factored(ay, col, ay.kappa * ix0[i]);
        for (std::size_t j = 0; j < ny; ++j) g(i, j) = d[j];
    }
    for (std::size_t j = 0; j < ny; ++j) {
        std::vector<double> row(nx);
        for (std::size_t i = 0; i < nx; ++i) row[i] = g(i, j);
        const std::vector<double> d = d_tau_factored(ax, row, ax.kappa * edge_y[j]);
        for (std::size_t i = 0; i < nx; ++i) out(i, j) = d[i];
    }
    const double corner = ax.c * ay.c * f(0, 0);
    for (std::size_t i = 1; i < nx; ++i) {
        const double kx = boundary_kernel(ax.nu, ax.tau[i]);
        for (std::size_t j = 1; j < ny; ++j) {
            const double ky = boundary_kernel(ay.nu, ay.tau[j]);
            out(i, j) += -ay.c * edge_x[i] * ky - ax.c * edge_y[j] * kx + corner * kx * ky;
        }
    }

    for (std::size_t j = 1; j < ny; ++j) out(0, j) = extrapolate0(ax.tau, out(1, j), out(2, j));
    for (std::size_t i = 0; i < nx; ++i) out(i, 0) = extrapolate0(ay.tau, out(i, 1), out(i, 2));
    require_finite(out.values);
    return out;
}

}  // namespace psifrac
