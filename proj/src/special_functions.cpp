#include "psifrac/special_functions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "psifrac/error.hpp"

namespace psifrac {

double gamma_fn(double x) {
    if (!(x > 0.0)) throw DomainError("gamma_fn requires x > 0, got " + std::to_string(x));
    if (x > 170.0) throw OverflowError("gamma_fn overflows double range for x > 170");
    return std::tgamma(x);
}

void MLParams::validate() const {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("Mittag-Leffler order must lie in (0,1]");
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("Mittag-Leffler rel_tol must lie in (0,1)");
    if (max_terms < 10) throw DomainError("Mittag-Leffler max_terms must be at least 10");
}

namespace {

struct SeriesResult {
    long double sum;
    int terms;
    bool converged;
};

// Sums up to `cap` terms; stops at the first term below rel_tol * partial sum.
SeriesResult ml_series(const MLParams& p, double z, int cap) {
    if (z == 0.0) return {1.0L, 1, true};
    const long double lz = std::log(static_cast<long double>(z));
    const long double a = p.alpha;
    long double sum = 0.0L;
    for (int k = 0; k < cap; ++k) {
        const long double term = std::exp(k * lz - std::lgamma(a * k + 1.0L));
        sum += term;
        if (term < static_cast<long double>(p.rel_tol) * sum) return {sum, k + 1, true};
    }
    return {sum, cap, false};
}

}  // namespace

int ml_series_terms(const MLParams& p, double z) {
    p.validate();
    if (z < 0.0) throw DomainError("mittag_leffler requires z >= 0");
    return ml_series(p, z, p.max_terms).terms;
}

double mittag_leffler(const MLParams& p, double z) {
    p.validate();
    if (!(z >= 0.0)) throw DomainError("mittag_leffler requires z >= 0, got " + std::to_string(z));
    if (std::isinf(z)) throw OverflowError("mittag_leffler argument is infinite");
    const int half = p.max_terms / 2;
    SeriesResult s = ml_series(p, z, half);
    if (!s.converged) {
        // Asymptotic regime. E_alpha grows like exp(z^(1/alpha)); the algebraic
        // corrections are O(1/z) in absolute terms and negligible in relative terms.
        const long double e = std::pow(static_cast<long double>(z), 1.0L / p.alpha);
        const long double v = std::exp(e) / p.alpha;
        if (!std::isfinite(v) || v > std::numeric_limits<double>::max())
            throw OverflowError("mittag_leffler overflows double range at z = " + std::to_string(z));
        return static_cast<double>(v);
    }
    if (s.sum > std::numeric_limits<double>::max())
        throw OverflowError("mittag_leffler overflows double range at z = " + std::to_string(z));
    return static_cast<double>(s.sum);
}

double mittag_leffler(double alpha, double z) {
    MLParams p;
    p.alpha = alpha;
    return mittag_leffler(p, z);
}

double ml_switch_threshold(const MLParams& p) {
    p.validate();
    const int half = p.max_terms / 2;
    auto needs_asymptotic = [&](double z) { return !ml_series(p, z, half).converged; };
    double lo = 0.0;
    double hi = 1.0;
    while (!needs_asymptotic(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) throw NonConvergenceError("no series/asymptotic switch point found");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (needs_asymptotic(mid)) hi = mid;
        else lo = mid;
    }
    return hi;
}

}  // namespace psifrac
