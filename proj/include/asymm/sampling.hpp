#pragma once

#include <cstdint>
#include <random>

#include "asymm/linalg.hpp"
#include "asymm/quantum.hpp"

namespace asymm {

// Deterministic per-trial seed derivation (splitmix64 over base ^ index).
std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t index);

// Entries i.i.d. standard complex Gaussian.
Matrix random_complex_gaussian(Eigen::Index rows, Eigen::Index cols,
                               std::mt19937_64& rng);

Matrix random_hermitian(Eigen::Index dim, std::mt19937_64& rng);

// Haar-distributed unitary (QR of a Gaussian matrix with phase fixing).
Matrix random_unitary(Eigen::Index dim, std::mt19937_64& rng);

DensityOperator random_pure_state(Eigen::Index dim, std::mt19937_64& rng);

// Mixed states as partial traces of bipartite pure states with an
// equal-dimension ancilla; roughly one draw in ten is deliberately
// rank-deficient (projected onto a random proper subspace and renormalized).
DensityOperator random_density_operator(Eigen::Index dim, std::mt19937_64& rng);

// Random CPTP map with `n_kraus` Kraus operators, obtained from a Haar random
// isometry (QR orthonormalization of a stacked Gaussian block).
KrausChannel random_channel(Eigen::Index dim_in, Eigen::Index dim_out,
                            int n_kraus, std::mt19937_64& rng);

}  // namespace asymm
