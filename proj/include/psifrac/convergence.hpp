#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "psifrac/psi_kernel.hpp"

namespace psifrac {

/// Closed-form problems used to measure observed convergence orders.
///   "power"        I^alpha of (psi - psi(0))^P on [0,1], default P = 2
///   "constant"     I^alpha of 1 (exact for the scheme, so rates saturate)
///   "trapezoid"    alpha = 1, psi = identity, f = exp
///   "hilfer-power" derivative of (psi - psi(0))^(P-1), default P = 2.5, interior 80%
///   "solver-zero"  solver with f = 0 against the data-only closed form
struct OracleSpec {
    std::string name = "power";
    double alpha = 0.5;
    double beta = 0.5;
    double param = -1.0;  ///< oracle parameter P; negative selects the default
};

struct ConvergenceRow {
    std::size_t n = 0;
    double sup_error = 0.0;
    double observed_rate = 0.0;  ///< log2(e_n / e_2n); NaN on the last row
    bool saturated = false;      ///< errors at round-off level, rate not meaningful
};

/// Sup error of the oracle at n nodes per axis. Throws ParseError for unknown oracles.
double oracle_error(const OracleSpec& o, const PsiKernel& k, std::size_t n);

/// Rows for n in `ns` (default 17, 33, 65, 129, 257).
std::vector<ConvergenceRow> convergence_table(const OracleSpec& o, const PsiKernel& k,
                                              const std::vector<std::size_t>& ns = {17, 33, 65, 129, 257});

/// CSV "n,sup_error,observed_rate"; saturated rates print as "saturated", missing ones empty.
void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows);

}  // namespace psifrac
