#pragma once

#include <cstddef>
#include <vector>

#include "psifrac/grid.hpp"
#include "psifrac/psi_kernel.hpp"

namespace psifrac {

/// Per-axis orders and the Hilfer type parameter.
struct FracOrder {
    double alpha1 = 1.0;
    double alpha2 = 1.0;
    double beta = 0.0;

    double gamma1() const { return alpha1 + beta * (1.0 - alpha1); }
    double gamma2() const { return alpha2 + beta * (1.0 - alpha2); }
    /// Orders in (0,1], beta in [0,1]; throws DomainError otherwise.
    void validate() const;
};

/// Dense lower-triangular quadrature matrix: (I g)(t_i) ~ sum_k w(i,k) g(t_k).
class VolterraMatrix {
public:
    VolterraMatrix() = default;
    explicit VolterraMatrix(std::size_t n) : n_(n), w_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double& operator()(std::size_t i, std::size_t k) { return w_[i * n_ + k]; }
    double operator()(std::size_t i, std::size_t k) const { return w_[i * n_ + k]; }
    const double* row(std::size_t i) const { return w_.data() + i * n_; }

    /// out[i] = sum_{k<=i} w(i,k) in[k*stride].
    void apply(const double* in, std::size_t stride, double* out, std::size_t out_stride) const;
    std::vector<double> apply(const std::vector<double>& in) const;

private:
    std::size_t n_ = 0;
    std::vector<double> w_;
};

/// tau_i = psi(t_i) - psi(t_0) for a node array starting at the kernel's t_lo.
std::vector<double> psi_nodes(const PsiKernel& k, const std::vector<double>& t);

/// Product-integration weights for (1/Gamma(a)) int_0^{tau_i} (tau_i - s)^(a-1) g(s) ds
/// with g interpolated piecewise linearly in tau. Exact for such g.
/// a == 0 gives the identity; a == 1 gives the trapezoid rule. a in [0,1].
VolterraMatrix product_weights(const std::vector<double>& tau, double a);

/// Weights for the same integral applied to s^p phi(s) with phi piecewise
/// linear in tau: (I^a tau^p phi)(tau_i) ~ sum_k w(i,k) phi(tau_k). Requires p > -1.
/// Cells touching a singularity are integrated by double-exponential quadrature.
VolterraMatrix weighted_product_weights(const std::vector<double>& tau, double a, double p);

/// One-dimensional psi-fractional integral of samples f(t_i).
std::vector<double> frac_int_1d(const PsiKernel& k, double alpha, const std::vector<double>& t,
                                const std::vector<double>& f);

/// Apply an x-axis (resp. y-axis) matrix to every column (resp. row) of f.
Field2D apply_x(const VolterraMatrix& w, const Field2D& f);
Field2D apply_y(const VolterraMatrix& w, const Field2D& f);

/// Integral in x of order alpha1 at every y; zero on x = 0.
Field2D frac_int_x(const PsiKernel& k, double alpha1, const Field2D& f);
/// Integral in y of order alpha2 at every x; zero on y = 0.
Field2D frac_int_y(const PsiKernel& k, double alpha2, const Field2D& f);
/// Two-variable integral: x sweep followed by y sweep.
Field2D frac_int_2d(const PsiKernel& k, const FracOrder& ord, const Field2D& f);

/// Throws DomainError unless the kernel domain contains [0, extent].
void require_kernel_covers(const PsiKernel& k, double extent);

}  // namespace psifrac
