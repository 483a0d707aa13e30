// Acceptance run: one PASS/FAIL line per criterion. Exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "psifrac/certifier.hpp"
#include "psifrac/error.hpp"
#include "psifrac/frac_derivative.hpp"
#include "psifrac/frac_integral.hpp"
#include "psifrac/gronwall.hpp"
#include "psifrac/solver.hpp"
#include "psifrac/special_functions.hpp"

using namespace psifrac;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double g(double x) { return static_cast<double>(oracle::gamma_lanczos(x)); }

std::vector<double> unit_nodes(std::size_t n) {
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    return t;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

// 1. Special functions.
Outcome special_functions() {
    Outcome o;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double z = 30.0 * i / 49.0;
        worst = std::max(worst, std::abs(mittag_leffler(1.0, z) - std::exp(z)) / std::exp(z));
    }
    std::mt19937_64 rng(1);
    int exact = 0;
    for (int i = 0; i < 20; ++i) {
        const double a = 1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        exact += mittag_leffler(a, 0.0) == 1.0;
    }
    o.pass = worst <= 1e-10 && exact == 20;
    o.detail = fmt("max rel err E1 vs exp %.2e, E_a(0)=1 for %g/20", worst, exact);
    return o;
}

// 2. Constant-field closed form and observed rates.
Outcome operator_oracles() {
    Outcome o;
    double worst_const = 0.0, worst_margin = 1e9;
    for (const char* s : {"identity", "power:2", "log_shift"}) {
        const PsiKernel k = make_builtin(s);
        for (double a : {0.7, 0.85, 1.0}) {
            const std::vector<double> t = unit_nodes(129);
            const std::vector<double> r = frac_int_1d(k, a, t, std::vector<double>(t.size(), 1.0));
            for (std::size_t i = 0; i < t.size(); ++i)
                worst_const = std::max(worst_const, std::abs(r[i] - std::pow(k.eval(t[i]), a) / g(a + 1)));
            // The constant is integrated exactly, so the rate is measured on (psi - psi(0))^2.
            std::vector<double> errs;
            for (std::size_t n : {33, 65, 129, 257}) {
                const std::vector<double> tn = unit_nodes(n);
                std::vector<double> f(n);
                for (std::size_t i = 0; i < n; ++i) f[i] = std::pow(k.eval(tn[i]), 2.0);
                const std::vector<double> q = frac_int_1d(k, a, tn, f);
                double e = 0.0;
                for (std::size_t i = 0; i < n; ++i) e = std::max(e, std::abs(q[i] - 2.0 / g(3 + a) * std::pow(k.eval(tn[i]), 2 + a)));
                errs.push_back(e);
            }
            for (std::size_t r2 = 0; r2 + 1 < errs.size(); ++r2)
                worst_margin = std::min(worst_margin, std::log2(errs[r2] / errs[r2 + 1]) - (1 + a - 0.1));
        }
    }
    o.pass = worst_const <= 5e-4 && worst_margin >= 0.0;
    o.detail = fmt("constant sup err %.2e at n=129, min(rate - (1+a-0.1)) = %.3f", worst_const, worst_margin);
    return o;
}

// 3. Semigroup property on random smooth fields.
Outcome semigroup() {
    Outcome o;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const char* kernels[] = {"identity", "power:2", "log_shift", "bounded_exp"};
    double worst_final = 0.0, worst_uniform = 0.0;
    int not_decreasing = 0;
    for (int field = 0; field < 10; ++field) {
        const PsiKernel k = make_builtin(kernels[field % 4]);
        double c[4], w[4], ph[4];
        for (int m = 0; m < 4; ++m) {
            c[m] = u(rng);
            w[m] = 1.0 + 2.0 * (u(rng) + 1.0);
            ph[m] = 3.0 * u(rng);
        }
        auto fn = [&](double x, double y) {
            double s = 0.0;
            for (int m = 0; m < 4; ++m) s += c[m] * std::cos(w[m] * x + ph[m] + y);
            return s;
        };
        double prev = INFINITY;
        for (std::size_t n : {33, 65, 129, 257}) {
            // I^0.3 f ~ tau^0.3 near the origin, so the nodes are graded there.
            const Grid2D gr = Grid2D::graded(1.0, 1.0, n, 5, 2.0);
            const Field2D f = Field2D::sample(gr, fn);
            const Field2D a = frac_int_x(k, 0.4, frac_int_x(k, 0.3, f));
            const Field2D b = frac_int_x(k, 0.7, f);
            double d = 0.0;
            for (std::size_t i = 0; i < a.values.size(); ++i) d = std::max(d, std::abs(a.values[i] - b.values[i]));
            if (!(d < prev)) ++not_decreasing;
            prev = d;
        }
        worst_final = std::max(worst_final, prev);
        const Grid2D ug = Grid2D::uniform(1.0, 1.0, 257, 5);
        const Field2D uf = Field2D::sample(ug, fn);
        const Field2D ua = frac_int_x(k, 0.4, frac_int_x(k, 0.3, uf)), ub = frac_int_x(k, 0.7, uf);
        for (std::size_t i = 0; i < ua.values.size(); ++i) worst_uniform = std::max(worst_uniform, std::abs(ua.values[i] - ub.values[i]));
    }
    o.pass = not_decreasing == 0 && worst_final <= 1e-3;
    o.detail = fmt("worst discrepancy at n=257 %.2e on graded nodes (uniform nodes %.2e), non-decreasing refinements %g",
                   worst_final, worst_uniform, not_decreasing);
    return o;
}

// 4. Hilfer power identity and kernel annihilation.
Outcome hilfer_identity() {
    Outcome o;
    double worst_power = 0.0, worst_ann = 0.0;
    const std::size_t n = 257, cut = n / 10;
    const std::vector<double> t = unit_nodes(n);
    for (const char* s : {"identity", "power:2", "log_shift", "bounded_exp"}) {
        const PsiKernel k = make_builtin(s);
        for (double alpha : {0.3, 0.5, 0.7, 0.9})
            for (double beta : {0.0, 0.5, 1.0}) {
                for (double delta : {2.5, 3.2}) {
                    std::vector<double> f(n);
                    for (std::size_t i = 0; i < n; ++i) f[i] = std::pow(k.eval(t[i]), delta - 1);
                    const std::vector<double> d = hilfer_1d(k, alpha, beta, t, f);
                    for (std::size_t i = cut; i < n - cut; ++i) {
                        const double want = g(delta) / g(delta - alpha) * std::pow(k.eval(t[i]), delta - alpha - 1);
                        worst_power = std::max(worst_power, std::abs(d[i] - want));
                    }
                }
                const double gam = alpha + beta * (1 - alpha);
                const std::vector<double> d = hilfer_1d(k, alpha, beta, t, std::vector<double>(n, 1.0), gam - 1);
                for (std::size_t i = cut; i < n - cut; ++i) worst_ann = std::max(worst_ann, std::abs(d[i]));
            }
    }
    o.pass = worst_power <= 1e-2 && worst_ann <= 1e-2;
    o.detail = fmt("power identity sup err %.2e, annihilation sup %.2e (n=257, interior 80%%)", worst_power, worst_ann);
    return o;
}

// 5. Gronwall soundness.
Outcome gronwall() {
    Outcome o;
    const GronwallCampaign c = gronwall_random_campaign(1000, 20240601);
    o.pass = c.cases == 1000 && c.violations == 0 && c.premise_failures == 0;
    o.detail = fmt("%g cases, %g violations, %g premise failures", c.cases, c.violations, c.premise_failures);
    return o;
}

// 6. Contraction in the Bielecki norm.
Outcome contraction() {
    Outcome o;
    ProblemSpec p;
    p.k = make_builtin("identity");
    p.grid = Grid2D::uniform(1.0, 1.0, 65, 65);
    p.ord = {1.0, 1.0, 0.0};
    p.rhs = [](double, double, double u, double u1, double u2) { return (std::sin(u) + u1 + std::cos(u2)) / 3.0; };
    p.lipschitz = 1.0;
    p.normalize();
    const PicardMap m(p);
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        SolutionTriple a{Field2D(p.grid), Field2D(p.grid), Field2D(p.grid)}, b = a;
        for (SolutionTriple* s : {&a, &b})
            for (Field2D* f : {&s->u, &s->u1, &s->u2})
                for (double& v : f->values) v = 5.0 * u(rng);
        worst = std::max(worst, measured_ratio(m, a, b, 4.0));
    }
    o.pass = worst <= 0.30;
    o.detail = fmt("max measured ratio %.4f over 100 pairs (limit 0.30), rigorous bound %.4f", worst, contraction_bound(m, 4.0));
    return o;
}

// 7. Solver oracles.
Outcome solver_oracle() {
    Outcome o;
    ProblemSpec p;
    p.k = make_builtin("identity");
    p.grid = Grid2D::uniform(1.0, 1.0, 129, 129);
    p.ord = {1.0, 1.0, 0.0};
    p.rhs = [](double, double, double, double, double) { return 1.0; };
    const SolveResult r = picard_solve(p, BieleckiParams{});
    double e1 = 0.0;
    for (std::size_t i = 0; i < 129; ++i)
        for (std::size_t j = 0; j < 129; ++j)
            e1 = std::max(e1, std::abs(r.sol.u(i, j) - p.grid.x[i] * p.grid.x[i] * p.grid.y[j] / 2));
    ProblemSpec q = p;
    q.ord = {0.8, 0.7, 0.5};
    q.k = make_builtin("log_shift");
    q.rhs = [](double, double, double, double, double) { return 0.0; };
    for (double x : q.grid.x) {
        q.data_h.push_back(std::cos(x));
        q.data_hdd.push_back(-std::cos(x));
    }
    for (double y : q.grid.y) {
        q.data_g1.push_back(1 + y);
        q.data_g2.push_back(y * y);
        q.data_g1d.push_back(1.0);
        q.data_g2d.push_back(2 * y);
    }
    const SolveResult z = picard_solve(q, BieleckiParams{});
    auto w = [](double gm, double t) { return t == 0.0 ? 1.0 : std::pow(std::log1p(t), gm - 1) / g(gm); };
    double e0 = 0.0;
    for (std::size_t i = 0; i < 129; ++i)
        for (std::size_t j = 0; j < 129; ++j) {
            const double x = q.grid.x[i], y = q.grid.y[j];
            const double px = w(q.ord.gamma1(), x), py = w(q.ord.gamma2(), y);
            e0 = std::max(e0, std::abs(z.sol.u(i, j) - (py * std::cos(x) + px * (1 + y) + px * x * y * y)));
            e0 = std::max(e0, std::abs(z.sol.u1(i, j) - (px + 2 * px * x * y)));
            e0 = std::max(e0, std::abs(z.sol.u2(i, j) + py * std::cos(x)));
        }
    o.pass = e1 <= 1e-3 && e0 <= 1e-12;
    o.detail = fmt("f=1 sup err %.2e at 129x129, f=0 sup err %.2e", e1, e0);
    return o;
}

// Randomized rhs families with a known Lipschitz constant in the max norm.
Rhs rhs_family(int family, double L) {
    switch (family) {
        case 0: return [L](double x, double y, double u, double, double) { return L * std::sin(u) + x * y; };
        case 1: return [L](double, double, double u, double u1, double u2) { return L * (u + u1 + u2) / 3.0; };
        case 2: return [L](double x, double, double, double u1, double) { return L * std::cos(u1) - x; };
        case 3: return [L](double, double y, double u, double, double u2) { return L * 0.5 * (std::sin(u) - u2) + y; };
        default: return [L](double, double, double u, double, double) { return L * u; };
    }
}

// 8. Ulam-Hyers corpus.
Outcome uh_corpus() {
    Outcome o;
    std::mt19937_64 rng(8080);
    auto unif = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
    const char* kernels[] = {"identity", "power:2", "log_shift", "bounded_exp", "power:0.5"};
    int bad_problems = 0, false_booleans = 0;
    std::string first_bad;
    for (int prob = 0; prob < 20; ++prob) {
        ProblemSpec p;
        p.k = make_builtin(kernels[prob % 5]);
        p.ord = {unif(2.0 / 3.0, 1.0), unif(2.0 / 3.0, 1.0), unif(0.0, 1.0)};
        const double L = prob < 2 ? 0.0 : unif(0.0, 2.0);
        const int family = static_cast<int>(rng() % 5);
        p.rhs = L == 0.0 ? Rhs([](double x, double y, double, double, double) { return x + y; }) : rhs_family(family, L);
        p.lipschitz = L;
        p.grid = Grid2D::uniform(unif(0.5, 2.0), unif(0.5, 2.0), 65, 65);
        const double c1 = unif(-1, 1), c2 = unif(-1, 1);
        for (double x : p.grid.x) p.data_h.push_back(1.0 + c1 * x);
        for (double y : p.grid.y) p.data_g1.push_back(c2 * std::sin(y));
        const Certificate c = certify_uh(p, BieleckiParams{}, 0.01, 5, 20240601 + prob);
        int falses = 0;
        for (int k = 0; k < 3; ++k) falses += !c.verdicts[k] + !c.residual_checks[k];
        false_booleans += falses;
        if (!c.all_pass()) {
            ++bad_problems;
            if (first_bad.empty())
                first_bad = fmt("problem %g (family %g, L=%.3f)", prob, family, L) +
                            fmt(": measured/C*eps = %.3f %.3f %.3f", c.measured[0] / (c.constants.c1 * 0.01),
                                c.measured[1] / (c.constants.c2 * 0.01), c.measured[2] / (c.constants.c3 * 0.01));
        }
    }
    o.pass = bad_problems == 0;
    o.detail = fmt("%g/20 problems fully certified, %g of 120 booleans false", 20 - bad_problems, false_booleans) +
               (first_bad.empty() ? "" : "; first failure " + first_bad);
    return o;
}

// 9. Ulam-Hyers-Rassias on the bounded kernel.
Outcome uhr_corpus() {
    Outcome o;
    std::mt19937_64 rng(9090);
    auto unif = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
    int bad = 0;
    double worst_drift = 0.0;
    for (int prob = 0; prob < 5; ++prob) {
        const FracOrder ord{unif(2.0 / 3.0, 1.0), unif(2.0 / 3.0, 1.0), unif(0.0, 1.0)};
        const double L = unif(0.0, 1.5);
        const int family = prob % 4;
        Lambdas at65;
        for (std::size_t n : {65, 129}) {
            ProblemSpec p;
            p.k = make_builtin("bounded_exp");
            p.ord = ord;
            p.rhs = rhs_family(family, L);
            p.lipschitz = L;
            p.grid = Grid2D::uniform(1.0, 1.0, n, n);
            p.data_h.assign(n, 1.0);
            const Field2D phi = Field2D::sample(p.grid, [](double x, double y) { return std::exp(x + y); });
            const Lambdas lam = estimate_lambdas(phi, ord, p.k);
            if (!lam.feasible) ++bad;
            if (n == 65) {
                at65 = lam;
                const Certificate c = certify_uhr(p, BieleckiParams{}, phi, 5, 20240601 + prob, "exp(x+y)");
                if (!c.all_pass()) ++bad;
            } else {
                worst_drift = std::max({worst_drift, std::abs(lam.l1 / at65.l1 - 1), std::abs(lam.l2 / at65.l2 - 1),
                                        std::abs(lam.l3 / at65.l3 - 1)});
            }
        }
    }
    o.pass = bad == 0 && worst_drift <= 0.05;
    o.detail = fmt("%g/5 problems certified and feasible, max lambda drift 65->129 %.2f%%", 5 - bad, 100 * worst_drift);
    return o;
}

// 10. Constant formulas.
Outcome constant_formulas() {
    Outcome o;
    const PsiKernel k = make_builtin("identity");
    const FracOrder ord{1.0, 1.0, 0.0};
    const double c3 = uh_constants(1.0, 1.0, 1.0, ord, k).c3;
    bool monotone = true;
    StabilityConstants prev{};
    for (int i = 0; i < 10; ++i) {
        const StabilityConstants c = uh_constants(0.25 * i, 1.0, 1.0, ord, k);
        if (i > 0 && !(c.c1 > prev.c1 && c.c2 > prev.c2 && c.c3 > prev.c3)) monotone = false;
        prev = c;
    }
    o.pass = std::abs(c3 - std::exp(1.0)) <= 1e-10 && monotone;
    o.detail = fmt("|c3 - e| = %.2e, monotone in L: ", std::abs(c3 - std::exp(1.0))) + (monotone ? "yes" : "no");
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
        double time_limit;  // seconds, <= 0 for none
    };
    const std::vector<Criterion> criteria = {
        {1, "special functions", special_functions, 1.0},
        {2, "operator oracles", operator_oracles, 10.0},
        {3, "semigroup", semigroup, 0.0},
        {4, "Hilfer power identity", hilfer_identity, 0.0},
        {5, "Gronwall soundness", gronwall, 30.0},
        {6, "Bielecki contraction", contraction, 0.0},
        {7, "solver oracle", solver_oracle, 0.0},
        {8, "Ulam-Hyers soundness", uh_corpus, 300.0},
        {9, "Ulam-Hyers-Rassias soundness", uhr_corpus, 0.0},
        {10, "constant formulas", constant_formulas, 0.0},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.time_limit > 0.0 && secs > c.time_limit) {
            o.pass = false;
            o.detail += fmt(" [over time limit %.0f s]", c.time_limit);
        }
        std::printf("criterion %d %s: %s (%s; %.2f s)\n", c.id, c.name, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
