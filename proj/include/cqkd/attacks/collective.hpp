#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "cqkd/attacks/model.hpp"
#include "cqkd/qcore/matrices.hpp"
#include "cqkd/random.hpp"

namespace cqkd::attacks {

using AncillaState = Eigen::VectorXcd;

inline constexpr std::size_t kInternalAncillaDim = 4;
inline constexpr std::size_t kExternalAncillaDim = 16;

/// Internal collective attack on Alice's qubit, ancilla starting in |e> = |0>:
///   U(|0>|e>) = a|0>|e00> + b|1>|e01>
///   U(|1>|e>) = c|0>|e10> + d|1>|e11>
struct CollectiveAttackParams {
  qcore::Amplitude a{1.0};
  qcore::Amplitude b{0.0};
  qcore::Amplitude c{0.0};
  qcore::Amplitude d{1.0};
  std::array<AncillaState, 4> ancilla;  // e00, e01, e10, e11
};

/// External collective attack on (Alice, Bob), ancilla starting in |e'> = |0>:
///   U(|xy>|e'>) = sum_k coeff[xy][k] |k>|ancilla[xy][k]>
/// with k running over 00, 01, 10, 11. The rows of `coeff` are the
/// a_k, b_k, c_k, d_k and `ancilla` holds the sixteen e/f/g/h states.
struct ExternalAttackParams {
  std::array<std::array<qcore::Amplitude, 4>, 4> coeff{};
  std::array<std::array<AncillaState, 4>, 4> ancilla;
};

/// Builds the 2*d_anc unitary. Throws std::invalid_argument when
/// |a|^2+|b|^2 or |c|^2+|d|^2 differs from 1, an ancilla state is not a unit
/// vector, or the two images are not orthogonal.
AttackModel constrained_attack(const CollectiveAttackParams& params);

/// Same for the external family (4*d_anc unitary).
AttackModel constrained_external_attack(const ExternalAttackParams& params);

/// Completes the fixed columns (column index -> unit vector, mutually
/// orthonormal) to a dim x dim unitary by Gram-Schmidt over the canonical basis
/// in index order.
qcore::UnitaryMatrix complete_unitary(std::size_t dim,
                                      const std::map<std::size_t, Eigen::VectorXcd>& columns);

/// Haar-random unitary (QR of a complex Ginibre matrix with phase fix).
qcore::UnitaryMatrix random_unitary(std::size_t dim, RandomStream& rng);

AncillaState random_unit_vector(std::size_t dim, RandomStream& rng);

/// Orthonormal ancilla states e00..e11 and random a, b, c, d.
CollectiveAttackParams random_internal_params(RandomStream& rng);

/// Forces the zero-error shape: b = c = 0, a = d = a/|a| (shared phase), e11 = e00.
CollectiveAttackParams project_to_zero_error(CollectiveAttackParams params);

/// Random member of the zero-error internal family.
CollectiveAttackParams zero_error_internal_params(RandomStream& rng);

/// Sixteen orthonormal ancilla states and random normalized coefficient rows.
ExternalAttackParams random_external_params(RandomStream& rng);

/// Keeps only the diagonal coefficients with one shared phase and one shared
/// ancilla state: a0|e00> = b1|f01> = c2|g10> = d3|h11>.
ExternalAttackParams project_to_zero_error(ExternalAttackParams params);

ExternalAttackParams zero_error_external_params(RandomStream& rng);

}  // namespace cqkd::attacks
