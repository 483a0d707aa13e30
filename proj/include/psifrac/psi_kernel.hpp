#pragma once

#include <functional>
#include <string>
#include <vector>

namespace psifrac {

/// Increasing weight function psi with analytic derivative on [t_lo, t_hi].
/// Immutable after construction.
class PsiKernel {
public:
    using Map = std::function<double(double)>;

    PsiKernel(std::string name, Map eval, Map deriv, double t_lo, double t_hi);

    double eval(double t) const { return eval_(t); }
    double deriv(double t) const { return deriv_(t); }
    /// psi(t) - psi(t_lo), computed without cancellation where the builtin allows it.
    double shifted(double t) const;
    double t_lo() const { return t_lo_; }
    double t_hi() const { return t_hi_; }
    const std::string& name() const { return name_; }
    bool covers(double lo, double hi) const { return lo >= t_lo_ && hi <= t_hi_; }

private:
    friend PsiKernel make_builtin(const std::string&, double, double);
    std::string name_;
    Map eval_;
    Map deriv_;
    Map shifted_;  // optional accurate psi(t) - psi(t_lo)
    double t_lo_;
    double t_hi_;
};

/// Outcome of probing a kernel. Each list holds the offending probe abscissae.
struct ValidationReport {
    std::vector<double> monotonicity;
    std::vector<double> nonpositive_derivative;
    std::vector<double> derivative_mismatch;
    bool ok() const { return monotonicity.empty() && nonpositive_derivative.empty() && derivative_mismatch.empty(); }
    std::string summary() const;
};

/// Probe `probe_points` equispaced abscissae on the kernel domain.
///
/// Monotonicity is checked between neighbours: a decrease is always flagged;
/// equal values are flagged only when psi' * dt exceeds a few ulps, so kernels
/// that saturate in floating point (1 - exp(-t) for large t) are accepted.
/// Derivative positivity and finite-difference consistency skip t_lo, where
/// kernels such as t^0.5 have an unbounded derivative.
ValidationReport validate(const PsiKernel& k, int probe_points = 1024);

/// Build and validate a builtin kernel from its config spelling:
/// "identity", "power:RHO", "log_shift" or "bounded_exp".
/// Throws ParseError for unknown names, DomainError for RHO <= 0 and
/// ValidationError when the probe fails.
PsiKernel make_builtin(const std::string& spec, double t_lo = 0.0, double t_hi = 50.0);

/// Wrap user-supplied maps and validate them. Throws ValidationError on failure.
PsiKernel make_kernel(std::string name, PsiKernel::Map eval, PsiKernel::Map deriv,
                      double t_lo, double t_hi, int probe_points = 1024);

}  // namespace psifrac
