#include "psifrac/psi_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "psifrac/error.hpp"

namespace psifrac {

PsiKernel::PsiKernel(std::string name, Map eval, Map deriv, double t_lo, double t_hi)
    : name_(std::move(name)), eval_(std::move(eval)), deriv_(std::move(deriv)), t_lo_(t_lo), t_hi_(t_hi) {
    if (!(t_lo >= 0.0) || !(t_hi > t_lo)) throw DomainError("kernel domain must satisfy 0 <= t_lo < t_hi");
    if (!eval_ || !deriv_) throw ValidationError("kernel requires both psi and psi'");
}

double PsiKernel::shifted(double t) const {
    if (shifted_) return shifted_(t);
    return eval_(t) - eval_(t_lo_);
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    os << monotonicity.size() << " monotonicity violations, " << nonpositive_derivative.size()
       << " nonpositive derivatives, " << derivative_mismatch.size() << " derivative mismatches";
    if (!monotonicity.empty()) os << " (first monotonicity failure at t=" << monotonicity.front() << ")";
    else if (!nonpositive_derivative.empty()) os << " (first nonpositive derivative at t=" << nonpositive_derivative.front() << ")";
    else if (!derivative_mismatch.empty()) os << " (first derivative mismatch at t=" << derivative_mismatch.front() << ")";
    return os.str();
}

ValidationReport validate(const PsiKernel& k, int probe_points) {
    if (probe_points < 2) throw DomainError("validate needs at least 2 probe points");
    ValidationReport r;
    const double lo = k.t_lo(), hi = k.t_hi();
    const double dt = (hi - lo) / (probe_points - 1);
    auto probe = [&](int i) { return i == probe_points - 1 ? hi : lo + dt * i; };
    constexpr double eps = std::numeric_limits<double>::epsilon();

    for (int i = 0; i + 1 < probe_points; ++i) {
        const double t0 = probe(i), t1 = probe(i + 1);
        const double p0 = k.eval(t0), p1 = k.eval(t1);
        if (!(p1 >= p0)) {
            r.monotonicity.push_back(t0);
        } else if (p1 == p0) {
            const double mid = 0.5 * (t0 + t1);
            const double expected_rise = std::abs(k.deriv(mid)) * (t1 - t0);
            if (expected_rise > 4.0 * eps * std::max(std::abs(p0), std::numeric_limits<double>::min()))
                r.monotonicity.push_back(t0);
        }
    }

    for (int i = 1; i < probe_points; ++i) {
        const double t = probe(i);
        const double d = k.deriv(t);
        if (!(d > 0.0) || !std::isfinite(d)) {
            r.nonpositive_derivative.push_back(t);
            continue;
        }
        const double h = 1e-4 * std::max(t, 1e-3);
        double fd;
        if (t - h >= lo && t + h <= hi) {
            fd = (k.eval(t + h) - k.eval(t - h)) / (2.0 * h);
        } else if (t + 2.0 * h <= hi) {
            fd = (-3.0 * k.eval(t) + 4.0 * k.eval(t + h) - k.eval(t + 2.0 * h)) / (2.0 * h);
        } else {
            fd = (3.0 * k.eval(t) - 4.0 * k.eval(t - h) + k.eval(t - 2.0 * h)) / (2.0 * h);
        }
        if (!(std::abs(fd - d) <= 1e-6 * (1.0 + std::abs(d)))) r.derivative_mismatch.push_back(t);
    }
    return r;
}

PsiKernel make_kernel(std::string name, PsiKernel::Map eval, PsiKernel::Map deriv, double t_lo,
                      double t_hi, int probe_points) {
    PsiKernel k(std::move(name), std::move(eval), std::move(deriv), t_lo, t_hi);
    ValidationReport r = validate(k, probe_points);
    if (!r.ok()) throw ValidationError("kernel '" + k.name() + "' failed validation: " + r.summary());
    return k;
}

PsiKernel make_builtin(const std::string& spec, double t_lo, double t_hi) {
    PsiKernel::Map eval, deriv, shifted;
    if (spec == "identity") {
        eval = [](double t) { return t; };
        deriv = [](double) { return 1.0; };
        shifted = [](double t) { return t; };
    } else if (spec == "log_shift") {
        eval = [](double t) { return std::log1p(t); };
        deriv = [](double t) { return 1.0 / (1.0 + t); };
        shifted = [](double t) { return std::log1p(t); };
    } else if (spec == "bounded_exp") {
        eval = [](double t) { return -std::expm1(-t); };
        deriv = [](double t) { return std::exp(-t); };
        shifted = [](double t) { return -std::expm1(-t); };
    } else if (spec.rfind("power:", 0) == 0) {
        const std::string arg = spec.substr(6);
        double rho = 0.0;
        try {
            std::size_t used = 0;
            rho = std::stod(arg, &used);
            if (used != arg.size()) throw std::invalid_argument(arg);
        } catch (const std::exception&) {
            throw ParseError("cannot parse power exponent in kernel spec '" + spec + "'");
        }
        if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("power kernel requires rho > 0");
        eval = [rho](double t) { return std::pow(t, rho); };
        deriv = [rho](double t) { return rho * std::pow(t, rho - 1.0); };
        shifted = [rho](double t) { return std::pow(t, rho); };
    } else {
        throw ParseError("unknown kernel '" + spec + "' (expected identity, power:RHO, log_shift, bounded_exp)");
    }
    PsiKernel k = make_kernel(spec, eval, deriv, t_lo, t_hi);
    if (t_lo == 0.0) k.shifted_ = shifted;
    return k;
}

}  // namespace psifrac
