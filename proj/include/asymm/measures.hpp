#pragma once

#include <map>
#include <string>
#include <vector>

#include "asymm/groups.hpp"
#include "asymm/quantum.hpp"

namespace asymm {

// tr(rho U(g)) for each listed element.
std::vector<Complex> characteristic_function(
    const DensityOperator& rho, const Representation& r,
    const std::vector<GroupElement>& elements);

// tr(rho L^k) for k = 1..k_max (k_max <= 12). The traces are real for
// Hermitian L; an imaginary residue above 1e-10 raises NumericalConsistency.
RealVector noether_moments(const DensityOperator& rho, const Matrix& generator,
                           int k_max);

// Entropy gain of twirling, S(twirl(rho)) - S(rho), in bits. Nonnegative up
// to roundoff; values in [-1e-9, 0) are clamped to zero and anything lower
// raises NumericalConsistency.
double holevo_asymmetry(const DensityOperator& rho, const Representation& r,
                        const GroupDensity& p);

// ||[rho, L]||_1 with the same negativity guard as above (trace norms are
// nonnegative; the guard documents the reporting convention).
double commutator_asymmetry(const DensityOperator& rho, const Matrix& generator);

// ||rho - U(g) rho U(g)^dagger||_1.
double trace_distance_asymmetry(const DensityOperator& rho,
                                const Representation& r, const GroupElement& g);

// Relative Renyi divergence of order s in bits:
// D_s = log2(tr(rho1^s rho2^(1-s))) / (s - 1), s in (0,1) or (1,inf).
// Eigenvalues at or below 1e-12 count as exact zeros; for s > 1 a support
// violation (supp rho1 not within supp rho2) yields +infinity.
double renyi_divergence(const DensityOperator& rho1, const DensityOperator& rho2,
                        double s);

// Skew information tr(rho L^2) - tr(rho^s L rho^(1-s) L) for s in (0,1) or
// (1,inf). Nonnegative for s in (0,1) (guarded); for s > 1 positivity needs
// full support and negative values are returned as computed.
double skew_information(const DensityOperator& rho, const Matrix& generator,
                        double s);

// Phase-estimation bound 1 / (4 S_{N,1/2}(rho)). Raises ZeroAsymmetry when
// the skew information is at or below 1e-12 (the bound is infinite).
double cramer_rao_bound_value(const DensityOperator& rho, const Matrix& number_op);

// Scalar measure evaluation record, as serialized into reports.
struct MeasureResult {
  std::string name;
  double value = 0.0;
  bool infinite = false;
  std::string inputs_digest;
  std::map<std::string, std::string> parameters;
  double negativity_guard = 1e-9;
};

}  // namespace asymm
