#include "psifrac/frac_integral.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <string>

#include "psifrac/error.hpp"
#include "psifrac/parallel.hpp"
#include "psifrac/special_functions.hpp"

namespace psifrac {

void FracOrder::validate() const {
    auto in01 = [](double a) { return a > 0.0 && a <= 1.0; };
    if (!in01(alpha1) || !in01(alpha2)) throw DomainError("fractional orders must lie in (0,1]");
    if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("beta must lie in [0,1]");
}

void VolterraMatrix::apply(const double* in, std::size_t stride, double* out, std::size_t out_stride) const {
    for (std::size_t i = 0; i < n_; ++i) {
        const double* r = row(i);
        double s = 0.0;
        for (std::size_t k = 0; k <= i; ++k) s += r[k] * in[k * stride];
        out[i * out_stride] = s;
    }
}

std::vector<double> VolterraMatrix::apply(const std::vector<double>& in) const {
    if (in.size() != n_) throw GridMismatchError("vector length does not match quadrature size");
    std::vector<double> out(n_);
    apply(in.data(), 1, out.data(), 1);
    return out;
}

std::vector<double> psi_nodes(const PsiKernel& k, const std::vector<double>& t) {
    std::vector<double> tau(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) tau[i] = k.shifted(t[i]);
    tau[0] = 0.0;
    for (std::size_t i = 1; i < tau.size(); ++i)
        if (!(tau[i] > tau[i - 1]))
            throw ValidationError("kernel '" + k.name() + "' does not separate grid nodes near t=" + std::to_string(t[i]));
    return tau;
}

namespace {

using Gauss = boost::math::quadrature::gauss<double, 10>;

void check_order(double a) {
    if (!(a >= 0.0 && a <= 1.0)) throw DomainError("integral order must lie in [0,1], got " + std::to_string(a));
}

void check_nodes(const std::vector<double>& tau) {
    if (tau.size() < 2 || tau[0] != 0.0) throw DomainError("quadrature nodes must start at 0 and have 2+ entries");
}

}  // namespace

VolterraMatrix product_weights(const std::vector<double>& tau, double a) {
    check_order(a);
    check_nodes(tau);
    const std::size_t n = tau.size();
    VolterraMatrix w(n);
    if (a == 0.0) {
        for (std::size_t i = 0; i < n; ++i) w(i, i) = 1.0;
        return w;
    }
    const double ga = gamma_fn(a);
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k) {
            const double A = tau[i] - tau[k];
            const double B = tau[i] - tau[k + 1];
            const double h = A - B;
            double wl, wr;
            if (a == 1.0) {
                wl = wr = 0.5 * h;
            } else if (B >= 2.0 * h) {
                // Far cell: closed forms cancel badly, the integrand is smooth.
                wl = Gauss::integrate([&](double s) { return std::pow(s, a - 1.0) * (s - B); }, B, A) / h;
                wr = Gauss::integrate([&](double s) { return std::pow(s, a - 1.0) * (A - s); }, B, A) / h;
            } else {
                const double d1 = (std::pow(A, a) - std::pow(B, a)) / a;
                const double d2 = (std::pow(A, a + 1.0) - std::pow(B, a + 1.0)) / (a + 1.0);
                wl = (d2 - B * d1) / h;
                wr = (A * d1 - d2) / h;
            }
            w(i, k) += wl / ga;
            w(i, k + 1) += wr / ga;
        }
    }
    return w;
}

VolterraMatrix weighted_product_weights(const std::vector<double>& tau, double a, double p) {
    if (p == 0.0) return product_weights(tau, a);
    check_order(a);
    check_nodes(tau);
    if (!(p > -1.0)) throw DomainError("weight exponent must exceed -1");
    const std::size_t n = tau.size();
    VolterraMatrix w(n);
    if (a == 0.0) {
        if (p < 0.0) throw DomainError("order-zero integral of a singular weight is undefined at the origin");
        for (std::size_t i = 1; i < n; ++i) w(i, i) = std::pow(tau[i], p);
        return w;
    }
    const double ga = gamma_fn(a);
    parallel_for(n - 1, [&](std::size_t row) {
        thread_local boost::math::quadrature::tanh_sinh<double> ts(15);
        const std::size_t i = row + 1;
        const double ti = tau[i];
        for (std::size_t k = 0; k < i; ++k) {
            const double l = tau[k], r = tau[k + 1], h = r - l;
            double wl, wr;
            if (l >= 2.0 * h && ti - r >= 2.0 * h) {
                auto base = [&](double s) { return std::pow(ti - s, a - 1.0) * std::pow(s, p); };
                wl = Gauss::integrate([&](double s) { return base(s) * (r - s); }, l, r) / h;
                wr = Gauss::integrate([&](double s) { return base(s) * (s - l); }, l, r) / h;
            } else {
                // Complement-aware integrand: sc is l - s near l and r - s near r.
                auto parts = [&, l, r, ti](double s, double sc, bool left_hat) {
                    const double dl = sc < 0.0 ? -sc : s - l;
                    const double dr = sc > 0.0 ? sc : r - s;
                    const double kern = std::pow((ti - r) + dr, a - 1.0) * std::pow(l + dl, p);
                    return kern * (left_hat ? dr : dl);
                };
                const double tol = 1e-13;
                wl = ts.integrate([&](double s, double sc) { return parts(s, sc, true); }, l, r, tol) / h;
                wr = ts.integrate([&](double s, double sc) { return parts(s, sc, false); }, l, r, tol) / h;
            }
            w(i, k) += wl / ga;
            w(i, k + 1) += wr / ga;
        }
    });
    return w;
}

std::vector<double> frac_int_1d(const PsiKernel& k, double alpha, const std::vector<double>& t,
                                const std::vector<double>& f) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("integral order must lie in (0,1]");
    if (t.size() != f.size()) throw GridMismatchError("node and value arrays differ in length");
    if (t.empty() || t.back() > k.t_hi() || t.front() < k.t_lo()) throw DomainError("nodes leave the kernel domain");
    return product_weights(psi_nodes(k, t), alpha).apply(f);
}

Field2D apply_x(const VolterraMatrix& w, const Field2D& f) {
    if (w.size() != f.nx()) throw GridMismatchError("x quadrature size does not match field");
    Field2D out(f.grid);
    const std::size_t ny = f.ny();
    parallel_for(ny, [&](std::size_t j) { w.apply(f.values.data() + j, ny, out.values.data() + j, ny); });
    return out;
}

Field2D apply_y(const VolterraMatrix& w, const Field2D& f) {
    if (w.size() != f.ny()) throw GridMismatchError("y quadrature size does not match field");
    Field2D out(f.grid);
    const std::size_t ny = f.ny();
    parallel_for(f.nx(), [&](std::size_t i) {
        w.apply(f.values.data() + i * ny, 1, out.values.data() + i * ny, 1);
    });
    return out;
}

void require_kernel_covers(const PsiKernel& k, double extent) {
    if (k.t_lo() != 0.0 || extent > k.t_hi())
        throw DomainError("kernel '" + k.name() + "' domain does not cover [0," + std::to_string(extent) + "]");
}

Field2D frac_int_x(const PsiKernel& k, double alpha1, const Field2D& f) {
    if (!(alpha1 > 0.0 && alpha1 <= 1.0)) throw DomainError("alpha1 must lie in (0,1]");
    require_kernel_covers(k, f.grid.a());
    return apply_x(product_weights(psi_nodes(k, f.grid.x), alpha1), f);
}

Field2D frac_int_y(const PsiKernel& k, double alpha2, const Field2D& f) {
    if (!(alpha2 > 0.0 && alpha2 <= 1.0)) throw DomainError("alpha2 must lie in (0,1]");
    require_kernel_covers(k, f.grid.b());
    return apply_y(product_weights(psi_nodes(k, f.grid.y), alpha2), f);
}

Field2D frac_int_2d(const PsiKernel& k, const FracOrder& ord, const Field2D& f) {
    ord.validate();
    return frac_int_y(k, ord.alpha2, frac_int_x(k, ord.alpha1, f));
}

}  // namespace psifrac
