#include "psifrac/gronwall.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <boost/math/tools/roots.hpp>
#include <random>

#include "psifrac/error.hpp"
#include "psifrac/frac_integral.hpp"
#include "psifrac/special_functions.hpp"

namespace psifrac {

std::string gronwall_hypothesis_failure(const GronwallData& d) {
    const std::size_t n = d.t.size();
    if (n < 2) return "time grid needs at least 2 nodes";
    if (d.u.size() != n || d.v.size() != n || d.h.size() != n) return "u, v, h and t must have equal length";
    if (!(d.alpha > 0.0 && d.alpha <= 1.0)) return "alpha must lie in (0,1]";
    if (d.t.front() < d.k.t_lo() || d.t.back() > d.k.t_hi()) return "time grid leaves the kernel domain";
    for (std::size_t i = 1; i < n; ++i)
        if (!(d.t[i] > d.t[i - 1])) return "time grid must be strictly increasing";
    for (std::size_t i = 0; i < n; ++i) {
        if (!(d.u[i] >= 0.0)) return "u must be nonnegative";
        if (!(d.v[i] >= 0.0)) return "v must be nonnegative";
        if (!(d.h[i] >= 0.0)) return "h must be nonnegative";
        if (i > 0 && d.h[i] < d.h[i - 1]) return "h must be nondecreasing";
    }
    return {};
}

std::vector<double> gronwall_bound(const GronwallData& d) {
    const std::string why = gronwall_hypothesis_failure(d);
    if (!why.empty()) throw HypothesisError(why);
    const double g = gamma_fn(d.alpha);
    const double p0 = d.k.eval(d.t.front());
    std::vector<double> b(d.t.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double tau = std::max(0.0, d.k.eval(d.t[i]) - p0);
        b[i] = d.v[i] * mittag_leffler(d.alpha, d.h[i] * g * std::pow(tau, d.alpha));
    }
    return b;
}

std::vector<double> gronwall_integral(const PsiKernel& k, double alpha, const std::vector<double>& t,
                                      const std::vector<double>& u) {
    std::vector<double> tau(t.size());
    const double p0 = k.eval(t.front());
    for (std::size_t i = 0; i < t.size(); ++i) tau[i] = k.eval(t[i]) - p0;
    tau[0] = 0.0;
    std::vector<double> q = product_weights(tau, alpha).apply(u);
    const double g = gamma_fn(alpha);
    for (double& x : q) x *= g;
    return q;
}

double gronwall_tolerance(double reference) { return 1e-9 + 1e-7 * std::abs(reference); }

GronwallReport check_gronwall(const GronwallData& d) {
    GronwallReport r;
    r.hypothesis = gronwall_hypothesis_failure(d);
    if (!r.hypothesis.empty()) {
        r.hypotheses_ok = false;
        return r;
    }
    const std::size_t n = d.t.size();
    const std::vector<double> q = gronwall_integral(d.k, d.alpha, d.t, d.u);
    const std::vector<double> b = gronwall_bound(d);
    r.premise_satisfied = true;
    r.holds = true;
    r.max_violation = -INFINITY;
    for (std::size_t i = 0; i < n; ++i) {
        const double rhs = d.v[i] + d.h[i] * q[i];
        if (d.u[i] > rhs + gronwall_tolerance(rhs)) r.premise_satisfied = false;
        if (d.u[i] > b[i] + gronwall_tolerance(b[i])) r.holds = false;
        r.max_violation = std::max(r.max_violation, d.u[i] - b[i]);
        if (i > 0 && d.v[i] < d.v[i - 1]) r.v_nondecreasing = false;
    }
    return r;
}

std::vector<double> premise_equality_solution(const PsiKernel& k, double alpha, const std::vector<double>& t,
                                              const std::vector<double>& v, const std::vector<double>& h,
                                              int max_sweeps) {
    const std::size_t n = t.size();
    if (v.size() != n || h.size() != n) throw GridMismatchError("t, v, h must have equal length");
    std::vector<double> tau(n);
    for (std::size_t i = 0; i < n; ++i) tau[i] = k.eval(t[i]) - k.eval(t.front());
    tau[0] = 0.0;
    VolterraMatrix w = product_weights(tau, alpha);
    const double g = gamma_fn(alpha);
    std::vector<double> u = v, next(n);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        const std::vector<double> q = w.apply(u);
        double change = 0.0, scale = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            next[i] = v[i] + h[i] * g * q[i];
            change = std::max(change, std::abs(next[i] - u[i]));
            scale = std::max(scale, std::abs(next[i]));
        }
        u.swap(next);
        if (change < 1e-12 * scale) return u;
    }
    throw NonConvergenceError("premise equality iteration did not settle within " + std::to_string(max_sweeps) + " sweeps");
}

std::vector<double> premise_equality_direct(const PsiKernel& k, double alpha, const std::vector<double>& t,
                                            const std::vector<double>& v, const std::vector<double>& h) {
    const std::size_t n = t.size();
    if (v.size() != n || h.size() != n) throw GridMismatchError("t, v, h must have equal length");
    std::vector<double> tau(n);
    for (std::size_t i = 0; i < n; ++i) tau[i] = k.eval(t[i]) - k.eval(t.front());
    tau[0] = 0.0;
    VolterraMatrix w = product_weights(tau, alpha);
    const double g = gamma_fn(alpha);
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < i; ++j) acc += w(i, j) * u[j];
        const double pivot = 1.0 - h[i] * g * w(i, i);
        if (!(pivot > 0.0)) throw DomainError("premise equality system is singular: h Gamma(alpha) w_ii >= 1 at node " + std::to_string(i));
        u[i] = (v[i] + h[i] * g * acc) / pivot;
    }
    return u;
}

GronwallCampaign gronwall_random_campaign(int cases, std::uint64_t seed) {
    static const std::array<const char*, 5> kernels = {"identity", "power:2", "power:0.5", "log_shift", "bounded_exp"};
    std::mt19937_64 rng(seed);
    auto unif = [&](double lo, double hi) { return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53); };
    GronwallCampaign c;
    for (int k = 0; k < cases; ++k) {
        GronwallCase gc;
        gc.psi = kernels[rng() % kernels.size()];
        gc.alpha = 1.0 - 0.75 * unif(0.0, 1.0);
        gc.t_end = unif(0.5, 2.0);
        gc.n = 17 + static_cast<std::size_t>(rng() % 113);
        const double v0 = unif(0.1, 2.0), v1 = unif(0.0, 1.0), q = unif(0.5, 2.0);
        const double h0 = unif(0.0, 1.0), h1 = unif(0.0, 0.5), z = unif(0.05, 2.0);
        GronwallData d{{}, {}, {}, {}, make_builtin(gc.psi), gc.alpha};
        // Scale h so the Mittag-Leffler argument at t_end is z.
        const double reach = gamma_fn(gc.alpha) * std::pow(d.k.eval(gc.t_end) - d.k.eval(0.0), gc.alpha);
        const double h_scale = z / ((h0 + h1) * reach);
        // Nodes uniform in psi so singular kernels such as sqrt(t) are resolved.
        const double p0 = d.k.eval(0.0), p1 = d.k.eval(gc.t_end);
        for (std::size_t i = 0; i < gc.n; ++i) {
            const double s = static_cast<double>(i) / static_cast<double>(gc.n - 1);
            const double target = p0 + s * (p1 - p0);
            if (i == 0 || i + 1 == gc.n) {
                d.t.push_back(gc.t_end * s);
            } else {
                const auto root = boost::math::tools::bisect([&](double x) { return d.k.eval(x) - target; }, 0.0,
                                                             gc.t_end, boost::math::tools::eps_tolerance<double>());
                d.t.push_back(0.5 * (root.first + root.second));
            }
            d.v.push_back(v0 + v1 * std::pow(s, q));
            d.h.push_back(h_scale * (h0 + h1 * s));
        }
        gc.h_sup = d.h.back();
        try {
            d.u = premise_equality_solution(d.k, d.alpha, d.t, d.v, d.h);
        } catch (const NonConvergenceError&) {
            d.u = premise_equality_direct(d.k, d.alpha, d.t, d.v, d.h);
            ++c.direct_solves;
        }
        gc.report = check_gronwall(d);
        const std::vector<double> b = gronwall_bound(d);
        gc.relative_excess = -INFINITY;
        for (std::size_t i = 0; i < gc.n; ++i) gc.relative_excess = std::max(gc.relative_excess, (d.u[i] - b[i]) / b[i]);
        ++c.cases;
        if (!gc.report.premise_satisfied) ++c.premise_failures;
        c.worst_relative_excess = std::max(c.worst_relative_excess, gc.relative_excess);
        if (!gc.report.holds) {
            ++c.violations;
            c.failing.push_back(gc);
        }
    }
    return c;
}

}  // namespace psifrac
