#include "psifrac/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "psifrac/error.hpp"
#include "psifrac/special_functions.hpp"

namespace psifrac {

namespace {

void fill_or_check(std::vector<double>& v, std::size_t n, const char* name) {
    if (v.empty()) v.assign(n, 0.0);
    if (v.size() != n) throw GridMismatchError(std::string("data array ") + name + " has wrong length");
    for (double x : v)
        if (!std::isfinite(x)) throw DomainError(std::string("data array ") + name + " is not finite");
}

double weighted_sup(const Field2D& f, double delta) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.nx(); ++i)
        for (std::size_t j = 0; j < f.ny(); ++j)
            m = std::max(m, std::abs(f(i, j)) * std::exp(-delta * (f.grid.x[i] + f.grid.y[j])));
    return m;
}

Field2D difference(const Field2D& a, const Field2D& b) {
    Field2D d(a.grid);
    for (std::size_t n = 0; n < d.values.size(); ++n) d.values[n] = a.values[n] - b.values[n];
    return d;
}

}  // namespace

void ProblemSpec::normalize() {
    if (!rhs) throw DomainError("problem has no right-hand side");
    ord.validate();
    if (grid.nx() < 2 || grid.ny() < 2) throw DomainError("problem grid is not set");
    require_kernel_covers(k, std::max(grid.a(), grid.b()));
    if (!(lipschitz >= 0.0) || !std::isfinite(lipschitz)) throw DomainError("Lipschitz constant must be finite and >= 0");
    if (lipschitz_field) {
        if (!(lipschitz_field->grid == grid)) throw GridMismatchError("Lipschitz field is on a different grid");
        for (double v : lipschitz_field->values)
            if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("Lipschitz field must be finite and >= 0");
    }
    fill_or_check(data_h, grid.nx(), "h");
    fill_or_check(data_hdd, grid.nx(), "h''");
    fill_or_check(data_g1, grid.ny(), "g1");
    fill_or_check(data_g2, grid.ny(), "g2");
    fill_or_check(data_g1d, grid.ny(), "g1'");
    fill_or_check(data_g2d, grid.ny(), "g2'");
}

double ProblemSpec::lipschitz_sup() const {
    double l = lipschitz;
    if (lipschitz_field)
        for (double v : lipschitz_field->values) l = std::max(l, v);
    return l;
}

double psi_gamma_weight(const PsiKernel& k, double gamma, double t) {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw DomainError("gamma must lie in (0,1]");
    if (t < k.t_lo() || t > k.t_hi()) throw DomainError("psi_gamma_weight argument outside kernel domain");
    if (gamma == 1.0) return 1.0;
    const double tau = k.shifted(t);
    if (tau <= 0.0) return 1.0;
    return std::pow(tau, gamma - 1.0) / gamma_fn(gamma);
}

Field2D w_operator(const Field2D& f) {
    Field2D out(f.grid);
    for (std::size_t i = 0; i < f.nx(); ++i)
        for (std::size_t j = 0; j < f.ny(); ++j) out(i, j) = f.grid.x[i] * f(i, j);
    return out;
}

double bielecki_norm(const SolutionTriple& t, double delta) {
    if (!(delta >= 0.0)) throw DomainError("Bielecki delta must be >= 0");
    return std::max({weighted_sup(t.u, delta), weighted_sup(t.u1, delta), weighted_sup(t.u2, delta)});
}

double bielecki_distance(const SolutionTriple& a, const SolutionTriple& b, double delta) {
    require_same_grid(a.u, b.u);
    return bielecki_norm({difference(a.u, b.u), difference(a.u1, b.u1), difference(a.u2, b.u2)}, delta);
}

PicardMap::PicardMap(ProblemSpec p) : p_(std::move(p)) {
    p_.normalize();
    const Grid2D& g = p_.grid;
    wx_ = product_weights(psi_nodes(p_.k, g.x), p_.ord.alpha1);
    wy_ = product_weights(psi_nodes(p_.k, g.y), p_.ord.alpha2);
    const double g1 = p_.ord.gamma1(), g2 = p_.ord.gamma2();
    std::vector<double> px(g.nx()), py(g.ny());
    for (std::size_t i = 0; i < g.nx(); ++i) px[i] = psi_gamma_weight(p_.k, g1, g.x[i]);
    for (std::size_t j = 0; j < g.ny(); ++j) py[j] = psi_gamma_weight(p_.k, g2, g.y[j]);
    data_ = {Field2D(g), Field2D(g), Field2D(g)};
    for (std::size_t i = 0; i < g.nx(); ++i) {
        const double x = g.x[i];
        for (std::size_t j = 0; j < g.ny(); ++j) {
            data_.u(i, j) = py[j] * p_.data_h[i] + px[i] * p_.data_g1[j] + px[i] * x * p_.data_g2[j];
            data_.u1(i, j) = px[i] * p_.data_g1d[j] + px[i] * x * p_.data_g2d[j];
            data_.u2(i, j) = py[j] * p_.data_hdd[i];
        }
    }
}

Field2D PicardMap::rhs_field(const SolutionTriple& w, const Field2D* g) const {
    const Grid2D& gr = p_.grid;
    Field2D F(gr);
    for (std::size_t i = 0; i < gr.nx(); ++i)
        for (std::size_t j = 0; j < gr.ny(); ++j) {
            double v = p_.rhs(gr.x[i], gr.y[j], w.u(i, j), w.u1(i, j), w.u2(i, j));
            if (g) v += (*g)(i, j);
            if (!std::isfinite(v)) throw DomainError("right-hand side is not finite at a grid node");
            F(i, j) = v;
        }
    return F;
}

SolutionTriple PicardMap::integral_terms(const Field2D& F) const {
    const Field2D WF = w_operator(F);
    Field2D ix = apply_x(wx_, WF);
    Field2D i2 = apply_y(wy_, ix);
    Field2D iy = apply_y(wy_, F);
    return {std::move(i2), std::move(ix), std::move(iy)};
}

SolutionTriple PicardMap::apply(const SolutionTriple& w, const Field2D* g) const {
    if (g && !(g->grid == p_.grid)) throw GridMismatchError("perturbation lives on a different grid");
    SolutionTriple t = integral_terms(rhs_field(w, g));
    for (std::size_t n = 0; n < t.u.values.size(); ++n) {
        t.u.values[n] += data_.u.values[n];
        t.u1.values[n] += data_.u1.values[n];
        t.u2.values[n] += data_.u2.values[n];
    }
    return t;
}

double contraction_bound(const PicardMap& m, double delta) {
    const ProblemSpec& p = m.problem();
    const Grid2D& g = p.grid;
    Field2D E(g);
    for (std::size_t i = 0; i < g.nx(); ++i)
        for (std::size_t j = 0; j < g.ny(); ++j) {
            const double l = p.lipschitz_field ? (*p.lipschitz_field)(i, j) : p.lipschitz;
            E(i, j) = l * std::exp(delta * (g.x[i] + g.y[j]));
        }
    return bielecki_norm(m.integral_terms(E), delta);
}

double measured_ratio(const PicardMap& m, const SolutionTriple& w, const SolutionTriple& w2, double delta) {
    const double den = bielecki_distance(w, w2, delta);
    if (!(den > 0.0)) throw DomainError("measured_ratio needs distinct triples");
    return bielecki_distance(m.apply(w), m.apply(w2), delta) / den;
}

double residual_check(const PicardMap& m, const SolutionTriple& sol, const Field2D* g) {
    const SolutionTriple a = m.apply(sol, g);
    return bielecki_distance(a, sol, 0.0);
}

SolveResult picard_solve(const PicardMap& m, const BieleckiParams& bp, const Field2D* g,
                         const SolutionTriple* start) {
    const ProblemSpec& p = m.problem();
    if (!(bp.delta > 0.0)) throw DomainError("Bielecki delta must be positive");
    if (!(bp.tol > 0.0)) throw DomainError("solver tolerance must be positive");
    if (bp.max_iter < 1) throw DomainError("max_iter must be positive");
    if (!(bp.delta > p.lipschitz_sup()))
        throw HypothesisError("Bielecki delta must exceed the Lipschitz constant");

    SolveResult r;
    r.delta = bp.delta;
    r.contraction_bound = contraction_bound(m, bp.delta);
    r.sol = start ? *start : m.data_part();
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int it = 1; it <= bp.max_iter; ++it) {
        SolutionTriple next = m.apply(r.sol, g);
        SolutionTriple prev = std::move(r.sol);
        const double d = bielecki_distance(next, prev, bp.delta);
        const double scale = bielecki_norm(next, bp.delta);
        if (!r.residuals.empty() && r.residuals.back() > 1e3 * eps * scale)
            r.contraction_ratio = std::max(r.contraction_ratio, d / r.residuals.back());
        r.residuals.push_back(d);
        r.sol = std::move(next);
        r.iters = it;
        if (d < bp.tol) {
            const double sup_d = bielecki_distance(r.sol, prev, 0.0);
            if (sup_d < bp.tol * std::max(1.0, bielecki_norm(r.sol, 0.0))) break;
        }
        if (it == bp.max_iter) {
            std::ostringstream os;
            os << "Picard iteration did not reach tol " << bp.tol << " in " << bp.max_iter
               << " iterations (last residual " << d << ")";
            throw NonConvergenceError(os.str());
        }
    }
    constexpr double margin = 0.05;
    const double expected = std::max(p.lipschitz_sup() / bp.delta, r.contraction_bound);
    if (r.contraction_ratio > expected + margin) {
        std::ostringstream os;
        os << "residual ratio " << r.contraction_ratio << " exceeds contraction estimate " << expected;
        r.warnings.push_back(os.str());
    }
    return r;
}

SolveResult picard_solve(const ProblemSpec& p, const BieleckiParams& bp) {
    return picard_solve(PicardMap(p), bp);
}

}  // namespace psifrac
