#pragma once

#include <vector>

#include "psifrac/frac_integral.hpp"
#include "psifrac/grid.hpp"
#include "psifrac/psi_kernel.hpp"

namespace psifrac {

// psi-Hilfer derivatives of order alpha in (0,1) and type beta in [0,1]:
//   D = I^{beta(1-alpha)} (1/psi') d/dt I^{(1-beta)(1-alpha)}.
// Evaluated through the equivalent form
//   D f = d/dtau I^{1-alpha} f - F(0+) tau^{nu-1} / Gamma(nu),   nu = beta(1-alpha),
// where tau = psi(t) - psi(0), F = I^{(1-beta)(1-alpha)} f and F(0+) is its
// trace. Differentiating in tau rather than t avoids dividing by psi'(0), which
// vanishes for kernels like t^2. Fields may carry a singular weight,
// f = tau^p phi with phi sampled on the grid, so that kernels such as
// tau^{gamma-1} are represented exactly. Values on the lines t = 0 are
// extrapolated linearly from the two nearest interior nodes.

/// Exact trace lim_{tau->0} I^mu (tau^p phi)(tau) divided by phi(0):
/// Gamma(p+1)/Gamma(p+1+mu) when p + mu = 0, and 0 when p + mu > 0.
/// Throws DomainError when p + mu < 0 (the trace is infinite).
double hilfer_trace_factor(double p, double mu);

/// d/dtau by second-order three-point stencils on nonuniform nodes.
std::vector<double> d_tau(const std::vector<double>& tau, const std::vector<double>& g);

/// One-dimensional derivative of tau^p phi sampled at nodes t.
std::vector<double> hilfer_1d(const PsiKernel& k, double alpha, double beta, const std::vector<double>& t,
                              const std::vector<double>& phi, double p = 0.0);

/// Derivative along x of (psi(x)-psi(0))^p f(x,y).
Field2D hilfer_dx(const PsiKernel& k, double alpha, double beta, const Field2D& f, double p = 0.0);
/// Derivative along y of (psi(y)-psi(0))^p f(x,y).
Field2D hilfer_dy(const PsiKernel& k, double alpha, double beta, const Field2D& f, double p = 0.0);

/// Mixed derivative of (psi(x)-psi(0))^{p1} (psi(y)-psi(0))^{p2} f(x,y) with
/// orders (alpha1, alpha2) and a common beta.
Field2D hilfer_mixed(const PsiKernel& k, const FracOrder& ord, const Field2D& f, double p1 = 0.0,
                     double p2 = 0.0);

}  // namespace psifrac
