#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "psifrac/frac_integral.hpp"
#include "psifrac/grid.hpp"
#include "psifrac/psi_kernel.hpp"

namespace psifrac {

/// Right-hand side f(x, y, u, u1, u2).
using Rhs = std::function<double(double, double, double, double, double)>;

/// Problem data for the coupled integral system
///   u  = Psi_g2(y) h(x) + Psi_g1(x) g1(y) + Psi_g1(x) x g2(y) + I_2d(x f)
///   u1 = Psi_g1(x) g1d(y) + Psi_g1(x) x g2d(y)                 + I_x(x f)
///   u2 = Psi_g2(y) hdd(x)                                      + I_y(f)
/// where Psi_g(t) = (psi(t)-psi(0))^(g-1)/Gamma(g), g_i = alpha_i + beta(1-alpha_i).
struct ProblemSpec {
    Rhs rhs;
    double lipschitz = 0.0;                 ///< L with |f(.,w) - f(.,w')| <= L max_k |w_k - w'_k|
    std::optional<Field2D> lipschitz_field; ///< pointwise L(x,y) when available
    std::vector<double> data_h;             ///< h on the x nodes
    std::vector<double> data_g1;            ///< g1 on the y nodes
    std::vector<double> data_g2;            ///< g2 on the y nodes
    std::vector<double> data_g1d;           ///< derivative data for the u1 equation (y nodes)
    std::vector<double> data_g2d;           ///< derivative data for the u1 equation (y nodes)
    std::vector<double> data_hdd;           ///< derivative data for the u2 equation (x nodes)
    FracOrder ord;
    PsiKernel k = make_builtin("identity");
    Grid2D grid;

    /// Fills empty data arrays with zeros and checks sizes, orders, kernel
    /// coverage and finiteness. Throws DomainError or GridMismatchError.
    void normalize();
    double lipschitz_sup() const;
};

struct SolutionTriple {
    Field2D u, u1, u2;
};

struct BieleckiParams {
    double delta = 4.0;
    double tol = 1e-10;
    int max_iter = 200;
};

/// (psi(t)-psi(0))^(gamma-1)/Gamma(gamma). At t = 0 with gamma < 1 the value 1
/// (the gamma = 1 weight) is returned so boundary fields stay finite.
double psi_gamma_weight(const PsiKernel& k, double gamma, double t);

/// x * f(x, y) pointwise.
Field2D w_operator(const Field2D& f);

/// max over components of max_nodes |c(x,y)| exp(-delta (x + y)).
double bielecki_norm(const SolutionTriple& t, double delta);
double bielecki_distance(const SolutionTriple& a, const SolutionTriple& b, double delta);

/// The three-component fixed-point map with its quadrature matrices cached.
class PicardMap {
public:
    explicit PicardMap(ProblemSpec p);

    const ProblemSpec& problem() const { return p_; }
    /// Data-only triple (the integral terms set to zero).
    const SolutionTriple& data_part() const { return data_; }
    /// A(w), optionally with an additive perturbation g of the rhs.
    SolutionTriple apply(const SolutionTriple& w, const Field2D* g = nullptr) const;
    /// rhs values f(x, y, w) + g on the grid.
    Field2D rhs_field(const SolutionTriple& w, const Field2D* g = nullptr) const;
    /// Integral terms only, for a given rhs field F: (I_2d(xF), I_x(xF), I_y(F)).
    SolutionTriple integral_terms(const Field2D& F) const;
    const VolterraMatrix& wx() const { return wx_; }
    const VolterraMatrix& wy() const { return wy_; }

private:
    ProblemSpec p_;
    VolterraMatrix wx_, wy_;
    SolutionTriple data_;
};

struct SolveResult {
    SolutionTriple sol;
    int iters = 0;
    std::vector<double> residuals;  ///< Bielecki distance between successive iterates
    double delta = 0.0;
    double contraction_ratio = 0.0; ///< largest successive residual ratio above round-off
    double contraction_bound = 0.0; ///< rigorous discrete bound on the map's Lipschitz constant
    std::vector<std::string> warnings;
};

/// Rigorous Lipschitz bound of the discrete map in the Bielecki norm, from the
/// nonnegative quadrature weights applied to L exp(delta (x+y)).
double contraction_bound(const PicardMap& m, double delta);

/// Picard iteration from the data-only iterate. Throws HypothesisError when
/// delta <= sup L, NonConvergenceError when max_iter is reached. Stops once the
/// Bielecki change is below tol and the unweighted sup change is below
/// tol max(1, sup|iterate|), so the far corner is resolved as well as the origin.
/// `g` is an optional additive rhs perturbation; `start` overrides the seed.
SolveResult picard_solve(const PicardMap& m, const BieleckiParams& bp, const Field2D* g = nullptr,
                         const SolutionTriple* start = nullptr);
SolveResult picard_solve(const ProblemSpec& p, const BieleckiParams& bp);

/// ||A(w) - A(w')||_B / ||w - w'||_B.
double measured_ratio(const PicardMap& m, const SolutionTriple& w, const SolutionTriple& w2, double delta);

/// Componentwise sup of |sol - A(sol)|.
double residual_check(const PicardMap& m, const SolutionTriple& sol, const Field2D* g = nullptr);

}  // namespace psifrac
