#include "psifrac/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <numbers>
#include <random>

#include "psifrac/error.hpp"
#include "psifrac/special_functions.hpp"

namespace psifrac {

namespace {

double ml(double order, double z) { return mittag_leffler(order, z); }

double lipschitz_at(const ProblemSpec& p, std::size_t i, std::size_t j) {
    return p.lipschitz_field ? (*p.lipschitz_field)(i, j) : p.lipschitz;
}

double envelope_at(const Envelope& env, std::size_t i, std::size_t j) {
    return env.phi ? (*env.phi)(i, j) : env.epsilon;
}

// Fixed point of D = I(weighted forcing) with forcing L max_k D_k + envelope.
// Monotone iteration from zero; every Picard deviation is bounded by it.
SolutionTriple comparison_majorant(const PicardMap& m, const Envelope& env, int max_iter) {
    const ProblemSpec& p = m.problem();
    const Grid2D& g = p.grid;
    SolutionTriple d{Field2D(g), Field2D(g), Field2D(g)};
    for (int it = 0; it < max_iter; ++it) {
        Field2D F(g);
        for (std::size_t i = 0; i < g.nx(); ++i)
            for (std::size_t j = 0; j < g.ny(); ++j)
                F(i, j) = lipschitz_at(p, i, j) * std::max({d.u(i, j), d.u1(i, j), d.u2(i, j)}) + envelope_at(env, i, j);
        SolutionTriple next = m.integral_terms(F);
        const double change = bielecki_distance(next, d, 0.0);
        const double scale = std::max(1e-300, bielecki_norm(next, 0.0));
        d = std::move(next);
        if (change <= 1e-13 * scale) return d;
    }
    throw NonConvergenceError("comparison majorant did not converge");
}

struct Deviations {
    std::array<Field2D, 3> abs;  // |v_k - u_k|
};

Deviations deviations(const SolutionTriple& v, const SolutionTriple& u) {
    Deviations d{{Field2D(u.u.grid), Field2D(u.u.grid), Field2D(u.u.grid)}};
    for (std::size_t n = 0; n < u.u.values.size(); ++n) {
        d.abs[0].values[n] = std::abs(v.u.values[n] - u.u.values[n]);
        d.abs[1].values[n] = std::abs(v.u1.values[n] - u.u1.values[n]);
        d.abs[2].values[n] = std::abs(v.u2.values[n] - u.u2.values[n]);
    }
    return d;
}

const Field2D& component(const SolutionTriple& t, int k) { return k == 0 ? t.u : (k == 1 ? t.u1 : t.u2); }

// Envelopes of v - A(v) for the three equations.
SolutionTriple residual_envelopes(const PicardMap& m, const Envelope& env) {
    const ProblemSpec& p = m.problem();
    const Grid2D& g = p.grid;
    if (env.phi) return m.integral_terms(*env.phi);
    SolutionTriple e{Field2D(g), Field2D(g), Field2D(g)};
    const double a1 = p.ord.alpha1, a2 = p.ord.alpha2;
    const double g1 = gamma_fn(a1 + 1.0), g2 = gamma_fn(a2 + 1.0);
    for (std::size_t i = 0; i < g.nx(); ++i) {
        const double x = g.x[i], tx = std::pow(p.k.shifted(x), a1);
        for (std::size_t j = 0; j < g.ny(); ++j) {
            const double ty = std::pow(p.k.shifted(g.y[j]), a2);
            e.u(i, j) = env.epsilon * x * tx * ty / (g1 * g2);
            e.u1(i, j) = env.epsilon * x * tx / g1;
            e.u2(i, j) = env.epsilon * ty / g2;
        }
    }
    return e;
}

Certificate run_campaign(const ProblemSpec& p, const BieleckiParams& bp, const Envelope& env, int trials,
                         std::uint64_t seed, Certificate cert) {
    if (trials < 1) throw DomainError("trials must be at least 1");
    const PicardMap m(p);
    const SolveResult base = picard_solve(m, bp);
    const std::array<double, 3> c{cert.constants.c1, cert.constants.c2, cert.constants.c3};
    const SolutionTriple renv = residual_envelopes(m, env);
    const Grid2D& g = p.grid;

    cert.seed = seed;
    cert.trials = trials;
    cert.verdicts = {true, true, true};
    cert.residual_checks = {true, true, true};
    cert.measured = {0.0, 0.0, 0.0};

    const SolutionTriple maj = comparison_majorant(m, env, std::max(1000, bp.max_iter));
    for (int k = 0; k < 3; ++k) {
        const Field2D& mk = component(maj, k);
        double worst = 0.0;
        for (std::size_t n = 0; n < mk.values.size(); ++n) {
            if (!env.phi) worst = std::max(worst, mk.values[n]);
            else if (env.phi->values[n] > 0.0) worst = std::max(worst, mk.values[n] / env.phi->values[n]);
        }
        cert.majorant[static_cast<std::size_t>(k)] = worst;
    }

    for (int t = 0; t < trials; ++t) {
        try {
            const Field2D gt = trial_perturbation(g, env, t, seed);
            const SolveResult pert = perturb_and_solve(m, gt, env, bp);
            const Deviations dev = deviations(pert.sol, base.sol);
            const SolutionTriple av = m.apply(pert.sol);
            for (int k = 0; k < 3; ++k) {
                const std::size_t kk = static_cast<std::size_t>(k);
                const Field2D& dk = dev.abs[kk];
                const Field2D& vk = component(pert.sol, k);
                const Field2D& ak = component(av, k);
                const Field2D& ek = component(renv, k);
                for (std::size_t n = 0; n < dk.values.size(); ++n) {
                    const double s = env.phi ? env.phi->values[n] : env.epsilon;
                    const double bound = c[kk] * s;
                    if (dk.values[n] > bound + verdict_tolerance(bound)) cert.verdicts[kk] = false;
                    if (s > 0.0) cert.measured[kk] = std::max(cert.measured[kk], dk.values[n] / (env.phi ? s : 1.0));
                    const double r = std::abs(vk.values[n] - ak.values[n]);
                    if (r > ek.values[n] + verdict_tolerance(ek.values[n])) cert.residual_checks[kk] = false;
                }
            }
        } catch (const Error& e) {
            cert.failures.push_back({t, std::string(error_code_name(e.code())) + ": " + e.what()});
        }
    }
    return cert;
}

}  // namespace

StabilityConstants uh_constants(double L, double a, double b, const FracOrder& ord, const PsiKernel& k) {
    ord.validate();
    if (!(L >= 0.0) || !std::isfinite(L)) throw DomainError("Lipschitz constant must be finite and >= 0");
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw DomainError("extents a and b must be finite and positive");
    require_kernel_covers(k, std::max(a, b));
    const double a1 = ord.alpha1, a2 = ord.alpha2;
    const double pa = std::pow(k.shifted(a), a1), pb = std::pow(k.shifted(b), a2);
    StabilityConstants s;
    s.ml_order = std::min(a1, a2);
    const double g1 = gamma_fn(a1), g2 = gamma_fn(a2);
    const double g1p = gamma_fn(a1 + 1.0), g2p = gamma_fn(a2 + 1.0);
    s.c1 = a * pb * pa / (g1p * g2p) * ml(s.ml_order, L * a * g1 * g2 * pb * pa);
    s.c2 = a * pa / g1p * ml(s.ml_order, L * a * pa * g1);
    s.c3 = pb / g2p * ml(s.ml_order, L * pb);
    return s;
}

double psi_infinity(const PsiKernel& k) {
    const double hi = k.t_hi();
    const double far = k.eval(hi), half = k.eval(0.5 * hi);
    if (!(std::abs(far - half) <= 1e-6))
        throw UnboundedKernelError("kernel '" + k.name() + "' has not converged at the domain cap; psi(inf) is not finite there");
    return k.shifted(hi);
}

Lambdas estimate_lambdas(const Field2D& phi, const FracOrder& ord, const PsiKernel& k) {
    ord.validate();
    const Grid2D& g = phi.grid;
    require_kernel_covers(k, std::max(g.a(), g.b()));
    for (std::size_t i = 1; i < g.nx(); ++i)
        for (std::size_t j = 1; j < g.ny(); ++j)
            if (!(phi(i, j) > 0.0)) throw InfeasibleError("comparison function must be positive away from the axes");

    auto ratios = [&](const Field2D& f, double& l1, double& l2, double& l3) {
        const VolterraMatrix wx = product_weights(psi_nodes(k, f.grid.x), ord.alpha1);
        const VolterraMatrix wy = product_weights(psi_nodes(k, f.grid.y), ord.alpha2);
        const Field2D ix = apply_x(wx, w_operator(f));
        const Field2D i2 = apply_y(wy, ix);
        const Field2D iy = apply_y(wy, f);
        l1 = l2 = l3 = 0.0;
        for (std::size_t i = 1; i < f.nx(); ++i)
            for (std::size_t j = 1; j < f.ny(); ++j) {
                l1 = std::max(l1, i2(i, j) / f(i, j));
                l2 = std::max(l2, ix(i, j) / f(i, j));
                l3 = std::max(l3, iy(i, j) / f(i, j));
            }
    };

    Lambdas lam;
    ratios(phi, lam.l1, lam.l2, lam.l3);
    lam.feasible = std::isfinite(lam.l1) && std::isfinite(lam.l2) && std::isfinite(lam.l3) && lam.l1 > 0.0 &&
                   lam.l2 > 0.0 && lam.l3 > 0.0;
    if (g.nx() >= 5 && g.ny() >= 5 && g.nx() % 2 == 1 && g.ny() % 2 == 1) {
        std::vector<double> cx, cy;
        for (std::size_t i = 0; i < g.nx(); i += 2) cx.push_back(g.x[i]);
        for (std::size_t j = 0; j < g.ny(); j += 2) cy.push_back(g.y[j]);
        Field2D coarse{Grid2D(cx, cy)};
        for (std::size_t i = 0; i < cx.size(); ++i)
            for (std::size_t j = 0; j < cy.size(); ++j) coarse(i, j) = phi(2 * i, 2 * j);
        ratios(coarse, lam.coarse_l1, lam.coarse_l2, lam.coarse_l3);
        auto grows = [](double fine, double c) { return !(fine <= 1.25 * c); };
        if (grows(lam.l1, lam.coarse_l1) || grows(lam.l2, lam.coarse_l2) || grows(lam.l3, lam.coarse_l3))
            lam.feasible = false;
    } else {
        lam.coarse_l1 = lam.l1;
        lam.coarse_l2 = lam.l2;
        lam.coarse_l3 = lam.l3;
    }
    return lam;
}

StabilityConstants uhr_constants(const ProblemSpec& p, const Lambdas& lam) {
    p.ord.validate();
    if (!(lam.l1 > 0.0 && lam.l2 > 0.0 && lam.l3 > 0.0)) throw DomainError("lambdas must be positive");
    const double P = psi_infinity(p.k);
    double S = 0.0;
    for (std::size_t i = 0; i < p.grid.nx(); ++i)
        for (std::size_t j = 0; j < p.grid.ny(); ++j) S = std::max(S, p.grid.x[i] * lipschitz_at(p, i, j));
    const double a1 = p.ord.alpha1, a2 = p.ord.alpha2;
    StabilityConstants s;
    s.ml_order = std::min(a1, a2);
    const double g1 = gamma_fn(a1), g2 = gamma_fn(a2);
    s.c1 = lam.l1 * ml(s.ml_order, S * g1 * g2 * std::pow(P, a1 + a2));
    s.c2 = lam.l2 * ml(s.ml_order, S * g1 * std::pow(P, a1));
    s.c3 = lam.l3 * ml(s.ml_order, S * g2 * std::pow(P, a2));
    return s;
}

SolveResult perturb_and_solve(const PicardMap& m, const Field2D& g, const Envelope& env, const BieleckiParams& bp) {
    if (!(g.grid == m.problem().grid)) throw GridMismatchError("perturbation lives on a different grid");
    for (std::size_t i = 0; i < g.nx(); ++i)
        for (std::size_t j = 0; j < g.ny(); ++j) {
            const double lim = envelope_at(env, i, j);
            if (!(std::abs(g(i, j)) <= lim * (1.0 + 1e-12)))
                throw BoundViolationError("perturbation exceeds its envelope at node (" + std::to_string(i) + "," +
                                          std::to_string(j) + ")");
        }
    return picard_solve(m, bp, &g);
}

Field2D trial_perturbation(const Grid2D& g, const Envelope& env, int trial, std::uint64_t seed) {
    Field2D f(g);
    std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(trial + 1)));
    const double a = g.a(), b = g.b();
    for (std::size_t i = 0; i < g.nx(); ++i)
        for (std::size_t j = 0; j < g.ny(); ++j) {
            double s;
            switch (trial) {
                case 0: s = 1.0; break;
                case 1: s = -1.0; break;
                case 2: s = ((i + j) % 2 == 0) ? 1.0 : -1.0; break;
                case 3: s = std::sin(std::numbers::pi * (2.0 * g.x[i] / a + 3.0 * g.y[j] / b) + 0.3); break;
                default: s = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0; break;
            }
            f(i, j) = s * envelope_at(env, i, j);
        }
    return f;
}

bool Certificate::all_pass() const {
    return failures.empty() && std::all_of(verdicts.begin(), verdicts.end(), [](bool b) { return b; }) &&
           std::all_of(residual_checks.begin(), residual_checks.end(), [](bool b) { return b; });
}

double verdict_tolerance(double envelope) { return 1e-8 + 1e-6 * std::abs(envelope); }

Certificate certify_uh(const ProblemSpec& p, const BieleckiParams& bp, double epsilon, int trials, std::uint64_t seed) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw DomainError("epsilon must be positive");
    ProblemSpec q = p;
    q.normalize();
    Certificate c;
    c.mode = "uh";
    c.epsilon = epsilon;
    c.constants = uh_constants(q.lipschitz_sup(), q.grid.a(), q.grid.b(), q.ord, q.k);
    Envelope env;
    env.epsilon = epsilon;
    return run_campaign(q, bp, env, trials, seed, std::move(c));
}

Certificate certify_uhr(const ProblemSpec& p, const BieleckiParams& bp, const Field2D& phi, int trials,
                        std::uint64_t seed, const std::string& phi_ref) {
    ProblemSpec q = p;
    q.normalize();
    if (!(phi.grid == q.grid)) throw GridMismatchError("comparison function lives on a different grid than the problem");
    for (double v : phi.values)
        if (!(v >= 0.0) || !std::isfinite(v)) throw InfeasibleError("comparison function must be finite and nonnegative");
    Certificate c;
    c.mode = "uhr";
    c.phi_ref = phi_ref;
    c.lambdas = estimate_lambdas(phi, q.ord, q.k);
    if (!c.lambdas.feasible) throw InfeasibleError("lambda estimates are not stable under refinement");
    c.constants = uhr_constants(q, c.lambdas);
    Envelope env;
    env.phi = &phi;
    return run_campaign(q, bp, env, trials, seed, std::move(c));
}

std::string certificate_json(const Certificate& c) {
    nlohmann::ordered_json j;
    j["mode"] = c.mode;
    j["seed"] = c.seed;
    if (c.mode == "uh") j["epsilon"] = c.epsilon;
    else j["phi_ref"] = c.phi_ref;
    j["constants"] = {{"c1", c.constants.c1}, {"c2", c.constants.c2}, {"c3", c.constants.c3}};
    j["ml_order"] = c.constants.ml_order;
    if (c.mode == "uhr")
        j["lambdas"] = {{"l1", c.lambdas.l1}, {"l2", c.lambdas.l2}, {"l3", c.lambdas.l3}};
    j["measured"] = {{"m1", c.measured[0]}, {"m2", c.measured[1]}, {"m3", c.measured[2]}};
    j["verdicts"] = {c.verdicts[0], c.verdicts[1], c.verdicts[2]};
    j["residual_checks"] = {c.residual_checks[0], c.residual_checks[1], c.residual_checks[2]};
    j["majorant"] = {{"m1", c.majorant[0]}, {"m2", c.majorant[1]}, {"m3", c.majorant[2]}};
    j["trials"] = c.trials;
    nlohmann::ordered_json f = nlohmann::ordered_json::array();
    for (const auto& t : c.failures) f.push_back({{"trial", t.trial}, {"error", t.error}});
    j["failures"] = f;
    return j.dump(2) + "\n";
}

}  // namespace psifrac
