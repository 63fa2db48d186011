#pragma once

#include <array>
#include <span>
#include <string_view>

#include "cqkd/qcore/matrices.hpp"
#include "cqkd/qcore/state.hpp"

namespace cqkd::qcore {

enum class BellOutcome { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline constexpr std::array<BellOutcome, 4> kBellOutcomes = {
    BellOutcome::PhiPlus, BellOutcome::PhiMinus, BellOutcome::PsiPlus, BellOutcome::PsiMinus};

std::string_view to_string(BellOutcome kind);
BellOutcome bell_outcome_from_string(std::string_view name);

const UnitaryMatrix& hadamard();
const UnitaryMatrix& pauli_x();
const UnitaryMatrix& pauli_z();
const UnitaryMatrix& identity2();

/// Two-qubit Bell state; PhiPlus = (|00> + |11>)/sqrt2 and so on.
StateVector bell_state(BellOutcome kind);

/// Four-qubit cluster state (|0000> + |0110> + |1001> - |1111>)/2.
StateVector cluster4();

/// Applies `u` to the listed qubits. targets[0] is the most significant qubit of
/// u's index space. Throws std::invalid_argument on a dimension mismatch or on
/// duplicate / out-of-range targets.
StateVector apply_unitary(const StateVector& state, const UnitaryMatrix& u,
                          std::span<const int> targets);

StateVector apply_unitary(const StateVector& state, const UnitaryMatrix& u,
                          std::initializer_list<int> targets);

}  // namespace cqkd::qcore
