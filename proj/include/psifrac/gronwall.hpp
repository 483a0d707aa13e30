#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psifrac/psi_kernel.hpp"

namespace psifrac {

/// Samples of u, v, h on an increasing time grid t, plus the kernel and order.
struct GronwallData {
    std::vector<double> t;
    std::vector<double> u;
    std::vector<double> v;
    std::vector<double> h;
    PsiKernel k;
    double alpha = 1.0;
};

/// Checks the lemma hypotheses: matching lengths, increasing t inside the
/// kernel domain, alpha in (0,1], u, v, h nonnegative and h nondecreasing.
/// Returns an empty string when all hold, otherwise the first failed condition.
std::string gronwall_hypothesis_failure(const GronwallData& d);

/// B(t_i) = v(t_i) E_alpha[h(t_i) Gamma(alpha) (psi(t_i) - psi(t_0))^alpha].
/// Throws HypothesisError naming the failed condition.
std::vector<double> gronwall_bound(const GronwallData& d);

/// Q_i ~ int_{t_0}^{t_i} psi'(s) (psi(t_i) - psi(s))^(alpha-1) u(s) ds by product quadrature.
std::vector<double> gronwall_integral(const PsiKernel& k, double alpha, const std::vector<double>& t,
                                      const std::vector<double>& u);

struct GronwallReport {
    bool hypotheses_ok = true;
    std::string hypothesis;       ///< failed condition when !hypotheses_ok
    bool premise_satisfied = false;
    bool holds = false;
    double max_violation = 0.0;   ///< max_i (u_i - B_i)
    bool v_nondecreasing = true;  ///< the bound can fail for decreasing v
};

/// Inequality tolerance used by check_gronwall: 1e-9 + 1e-7 |reference|.
double gronwall_tolerance(double reference);

/// Evaluates the premise u <= v + h Q and the conclusion u <= B at every node.
/// Never throws for hypothesis failures; they are reported.
GronwallReport check_gronwall(const GronwallData& d);

/// Equality case u = v + h Q(u) by Picard sweeps (at most max_sweeps, stopping
/// when the sup change drops below 1e-12 max(1, sup|u|)). Throws NonConvergenceError.
std::vector<double> premise_equality_solution(const PsiKernel& k, double alpha, const std::vector<double>& t,
                                              const std::vector<double>& v, const std::vector<double>& h,
                                              int max_sweeps = 200);

/// The same discrete fixed point by forward substitution on the lower
/// triangular system. Throws DomainError if a diagonal pivot is not positive.
std::vector<double> premise_equality_direct(const PsiKernel& k, double alpha, const std::vector<double>& t,
                                            const std::vector<double>& v, const std::vector<double>& h);

/// One randomized equality case: kernel, order, grid and the worst excess.
struct GronwallCase {
    std::string psi;
    double alpha = 1.0;
    double t_end = 1.0;
    std::size_t n = 0;
    double h_sup = 0.0;
    GronwallReport report;
    double relative_excess = 0.0;  ///< max_i (u_i - B_i) / B_i
};

struct GronwallCampaign {
    int cases = 0;
    int violations = 0;
    int premise_failures = 0;
    int direct_solves = 0;  ///< cases where Picard did not settle and forward substitution was used
    double worst_relative_excess = 0.0;
    std::vector<GronwallCase> failing;  ///< every case whose conclusion failed
};

/// Random equality cases: kernel drawn from the builtins, alpha uniform in
/// (0.25,1], T in [0.5, 2], 17 to 129 nodes on [0, T] uniform in psi, nondecreasing v
/// in [0.1, 3] and nondecreasing affine h scaled so the Mittag-Leffler argument
/// at T lies in [0.05, 2]. Each u is the premise equality solution.
GronwallCampaign gronwall_random_campaign(int cases, std::uint64_t seed);

}  // namespace psifrac
