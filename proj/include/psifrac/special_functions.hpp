#pragma once

namespace psifrac {

/// Gamma function for positive real arguments.
/// Throws DomainError for x <= 0 and OverflowError for x > 170.
double gamma_fn(double x);

/// Parameters of the one-parameter Mittag-Leffler function E_alpha.
struct MLParams {
    double alpha = 1.0;      ///< order in (0, 1]
    double rel_tol = 1e-14;  ///< series stopping tolerance, relative to the partial sum
    int max_terms = 500;     ///< hard cap on series terms

    /// Throws DomainError on out-of-range fields.
    void validate() const;
};

/// E_alpha(z) for z >= 0.
///
/// The power series is summed in extended precision until a term drops below
/// rel_tol times the partial sum. When the series would need more than
/// max_terms/2 terms, the positive-axis asymptotic (1/alpha) exp(z^(1/alpha))
/// is returned instead. Throws DomainError for z < 0 and OverflowError when
/// the result exceeds double range.
double mittag_leffler(const MLParams& p, double z);

/// Convenience overload with default tolerances.
double mittag_leffler(double alpha, double z);

/// Smallest z at which the series needs more than max_terms/2 terms, i.e. the
/// point where mittag_leffler switches to the asymptotic branch. Located by
/// bisection on the term count, once per parameter set.
double ml_switch_threshold(const MLParams& p);

/// Number of series terms the summation uses at z (including the stopping term).
int ml_series_terms(const MLParams& p, double z);

}  // namespace psifrac
