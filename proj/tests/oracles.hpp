#pragma once
// Reference implementations used only by the tests. Nothing here calls the
// library's numerical routines, so agreement is evidence rather than tautology.

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace oracle {

using ld = long double;

/// log Gamma(x) for x > 0 by the Lanczos approximation (g = 7, 9 terms) with
/// upward recursion so the series is always evaluated at x >= 8.
inline ld lgamma_lanczos(ld x) {
    static const ld c[9] = {0.99999999999980993227684700473478L, 676.520368121885098567009190444019L,
                            -1259.13921672240287047156078755283L, 771.3234287776530788486528258894L,
                            -176.61502916214059906584551354L,     12.507343278686904814458936853L,
                            -0.13857109526572011689554707L,       9.984369578019570859563e-6L,
                            1.50563273514931155834e-7L};
    ld shift = 0.0L;
    while (x < 8.0L) {
        shift += std::log(x);
        x += 1.0L;
    }
    const ld xm = x - 1.0L;
    ld a = c[0];
    const ld t = xm + 7.5L;
    for (int i = 1; i < 9; ++i) a += c[i] / (xm + static_cast<ld>(i));
    return 0.5L * std::log(2.0L * 3.14159265358979323846264338327950288L) + (xm + 0.5L) * std::log(t) - t +
           std::log(a) - shift;
}

inline ld gamma_lanczos(ld x) { return std::exp(lgamma_lanczos(x)); }

/// E_alpha(z) = sum z^k / Gamma(alpha k + 1) summed in the log domain until
/// terms are negligible; valid for moderate z >= 0.
inline ld ml_series(ld alpha, ld z) {
    if (z == 0.0L) return 1.0L;
    ld sum = 0.0L;
    const ld lz = std::log(z);
    bool past_peak = false;
    for (int k = 0; k < 20000; ++k) {
        const ld term = std::exp(static_cast<ld>(k) * lz - lgamma_lanczos(alpha * k + 1.0L));
        sum += term;
        if (k > 0 && term < sum * 1e-21L) {
            if (past_peak) break;
            past_peak = true;
        }
    }
    return sum;
}

/// Tanh-sinh quadrature of f on [a, b]. The integrand receives (s, s - a, b - s)
/// so endpoint singularities can be evaluated without cancellation.
inline ld tanh_sinh(const std::function<ld(ld, ld, ld)>& f, ld a, ld b, int levels = 9) {
    const ld half = 0.5L * (b - a);
    const ld pi2 = 1.57079632679489661923132169163975144L;
    ld h = 1.0L;
    ld sum = 0.0L;
    auto contrib = [&](ld t) {
        const ld sh = pi2 * std::sinh(t);
        const ld ch = std::cosh(sh);
        const ld w = pi2 * std::cosh(t) / (ch * ch);
        // distance of the outer nodes from their nearest end: half (1 - tanh(sh))
        const ld d = half * std::exp(-sh) / ch;
        const ld far = 2.0L * half - d;
        if (!(d > 0.0L)) return 0.0L;
        return w * (f(a + d, d, far) + f(b - d, far, d)) * 0.5L;
    };
    const ld tmax = 4.0L;
    // level 0
    sum = f(0.5L * (a + b), half, half) * pi2;
    for (ld t = h; t <= tmax; t += h) sum += 2.0L * contrib(t);
    ld result = sum * h;
    for (int lev = 1; lev <= levels; ++lev) {
        h *= 0.5L;
        ld add = 0.0L;
        for (ld t = h; t <= tmax; t += 2.0L * h) add += 2.0L * contrib(t);
        sum += add;
        result = sum * h;
    }
    return result * half;
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<ld>& x, std::vector<ld>& w) {
    x.assign(n, 0.0L);
    w.assign(n, 0.0L);
    const ld pi = 3.14159265358979323846264338327950288L;
    for (int i = 0; i < n; ++i) {
        ld z = std::cos(pi * (i + 0.75L) / (n + 0.5L));
        ld dp = 0.0L;
        for (int it = 0; it < 100; ++it) {
            ld p0 = 1.0L, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const ld p2 = ((2.0L * k - 1.0L) * z * p1 - (k - 1.0L) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0L);
            const ld dz = p1 / dp;
            z -= dz;
            if (std::fabs(dz) < 1e-19L) break;
        }
        x[i] = z;
        w[i] = 2.0L / ((1.0L - z * z) * dp * dp);
    }
}

/// psi-fractional integral (1/Gamma(a)) int_0^x psi'(s) (psi(x) - psi(s))^(a-1) f(s) ds
/// by tanh-sinh. `psi_gap(x, s, d)` must return psi(x) - psi(s) given the distance
/// d = x - s, so the kernel is accurate near the diagonal.
inline ld psi_integral(const std::function<ld(ld)>& dpsi, const std::function<ld(ld, ld, ld)>& psi_gap,
                       const std::function<ld(ld)>& f, ld a, ld x) {
    if (x == 0.0L) return 0.0L;
    auto integrand = [&](ld s, ld, ld dr) { return dpsi(s) * std::pow(psi_gap(x, s, dr), a - 1.0L) * f(s); };
    return tanh_sinh(integrand, 0.0L, x) / gamma_lanczos(a);
}

/// Kernel maps for the builtin names, written out independently.
struct KernelRef {
    std::function<ld(ld)> psi;
    std::function<ld(ld)> dpsi;
    std::function<ld(ld, ld, ld)> gap;  // psi(x) - psi(s) with d = x - s
};

inline KernelRef kernel_ref(const char* name) {
    const std::string n(name);
    if (n == "identity")
        return {[](ld t) { return t; }, [](ld) { return 1.0L; }, [](ld, ld, ld d) { return d; }};
    if (n == "power:2")
        return {[](ld t) { return t * t; }, [](ld t) { return 2.0L * t; },
                [](ld x, ld s, ld d) { return d * (x + s); }};
    if (n == "log_shift")
        return {[](ld t) { return std::log1p(t); }, [](ld t) { return 1.0L / (1.0L + t); },
                [](ld, ld s, ld d) { return std::log1p(d / (1.0L + s)); }};
    if (n == "bounded_exp")
        return {[](ld t) { return -std::expm1(-t); }, [](ld t) { return std::exp(-t); },
                [](ld, ld s, ld d) { return -std::exp(-s) * std::expm1(-d); }};
    return {[](ld t) { return std::sqrt(t); }, [](ld t) { return 0.5L / std::sqrt(t); },
            [](ld x, ld s, ld d) { return d / (std::sqrt(x) + std::sqrt(s)); }};
}

}  // namespace oracle
