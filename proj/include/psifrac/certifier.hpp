#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "psifrac/solver.hpp"

namespace psifrac {

struct StabilityConstants {
    double c1 = 0.0, c2 = 0.0, c3 = 0.0;
    double ml_order = 1.0;  ///< order of the Mittag-Leffler factor, min(alpha1, alpha2)
};

/// Ulam-Hyers constants for extents a, b and Lipschitz constant L:
///   c1 = a Pb^a2 Pa^a1 / (G(a1+1) G(a2+1)) E[L a G(a1) G(a2) Pb^a2 Pa^a1]
///   c2 = a Pa^a1 / G(a1+1) E[L a Pa^a1 G(a1)]
///   c3 = Pb^a2 / G(a2+1) E[L Pb^a2]
/// with Pa = psi(a) - psi(0), Pb = psi(b) - psi(0), G = Gamma and E the
/// Mittag-Leffler function of order min(a1, a2).
StabilityConstants uh_constants(double lipschitz, double a, double b, const FracOrder& ord, const PsiKernel& k);

/// psi(t_hi) - psi(0) for a bounded kernel. Throws UnboundedKernelError unless
/// psi(t_hi) and psi(t_hi/2) agree to 1e-6.
double psi_infinity(const PsiKernel& k);

struct Lambdas {
    double l1 = 0.0, l2 = 0.0, l3 = 0.0;
    double coarse_l1 = 0.0, coarse_l2 = 0.0, coarse_l3 = 0.0;  ///< same ratios on every other node
    bool feasible = false;
};

/// lambda1 = sup I_2d(x phi)/phi, lambda2 = sup I_x(x phi)/phi, lambda3 = sup I_y(phi)/phi
/// over nodes with x > 0 and y > 0. Infeasible when a ratio is not finite or
/// grows by more than 25% from the half-resolution grid to the full grid.
/// Throws InfeasibleError if phi is not positive on those nodes.
Lambdas estimate_lambdas(const Field2D& phi, const FracOrder& ord, const PsiKernel& k);

/// Generalized Ulam-Hyers-Rassias constants
///   c1 = l1 E[S G(a1) G(a2) P^(a1+a2)], c2 = l2 E[S G(a1) P^a1], c3 = l3 E[S G(a2) P^a2]
/// with S = max over nodes of x L(x,y) and P = psi_infinity(k).
StabilityConstants uhr_constants(const ProblemSpec& p, const Lambdas& lam);

/// Envelope mode of an admissible perturbation.
struct Envelope {
    double epsilon = 0.0;            ///< used when phi is null
    const Field2D* phi = nullptr;    ///< pointwise bound |g| <= phi
};

/// Solve with rhs f + g after checking g against its envelope (BoundViolationError).
SolveResult perturb_and_solve(const PicardMap& m, const Field2D& g, const Envelope& env, const BieleckiParams& bp);

/// Deterministic trial perturbations: +env, -env, a checkerboard, a smooth sine
/// pattern, then uniform random multiples of the envelope.
Field2D trial_perturbation(const Grid2D& g, const Envelope& env, int trial, std::uint64_t seed);

struct TrialFailure {
    int trial;
    std::string error;
};

struct Certificate {
    std::string mode;  ///< "uh" or "uhr"
    std::uint64_t seed = 0;
    double epsilon = 0.0;
    std::string phi_ref;
    StabilityConstants constants;
    Lambdas lambdas;
    /// uh: sup |v_k - u_k|; uhr: sup |v_k - u_k| / phi.
    std::array<double, 3> measured{0, 0, 0};
    /// Worst case of the linear comparison system driven by the envelope, in the
    /// units of `measured`. An upper bound on the discrete deviations that does
    /// not involve the constants.
    std::array<double, 3> majorant{0, 0, 0};
    std::array<bool, 3> verdicts{false, false, false};
    /// Integral-inequality residual checks of the perturbed solutions.
    std::array<bool, 3> residual_checks{false, false, false};
    int trials = 0;
    std::vector<TrialFailure> failures;

    bool all_pass() const;
};

/// Verdict tolerance: 1e-8 absolute plus 1e-6 relative to the envelope.
double verdict_tolerance(double envelope);

Certificate certify_uh(const ProblemSpec& p, const BieleckiParams& bp, double epsilon, int trials,
                       std::uint64_t seed = 20240601);
Certificate certify_uhr(const ProblemSpec& p, const BieleckiParams& bp, const Field2D& phi, int trials,
                        std::uint64_t seed = 20240601, const std::string& phi_ref = "");

/// JSON text of a certificate (stable key order, shortest round-trip numbers).
std::string certificate_json(const Certificate& c);

}  // namespace psifrac
