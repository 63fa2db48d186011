#pragma once

#include <optional>
#include <string>
#include <variant>

#include "cqkd/qcore/matrices.hpp"
#include "cqkd/qcore/state.hpp"
#include "cqkd/random.hpp"

namespace cqkd::attacks {

/// Dishonest Bob swaps Alice's qubit into a one-qubit memory and forwards a
/// fresh random Z-basis qubit instead.
struct InterceptResendZ {};

/// Z measurement of the Charlie-to-Alice qubit, forwarded as measured.
struct MeasureResendZ {};

/// Bell measurement of the (Alice, Bob) qubit pair, forwarded as measured.
struct MeasureResendBell {};

/// Independent Pauli X and Pauli Z, each with probability q, on Alice's qubit.
class Depolarizing {
 public:
  explicit Depolarizing(double q);
  double q() const { return q_; }

 private:
  double q_;
};

/// Unitary on (Alice's qubit) x ancilla; dim = 2 * d_anc.
class CollectiveInternal {
 public:
  explicit CollectiveInternal(qcore::UnitaryMatrix u);
  const qcore::UnitaryMatrix& unitary() const { return u_; }
  int ancilla_qubits() const { return ancilla_qubits_; }

 private:
  qcore::UnitaryMatrix u_;
  int ancilla_qubits_;
};

/// Unitary on (Alice's qubit, Bob's qubit) x ancilla; dim = 4 * d_anc.
class CollectiveExternal {
 public:
  explicit CollectiveExternal(qcore::UnitaryMatrix u);
  const qcore::UnitaryMatrix& unitary() const { return u_; }
  int ancilla_qubits() const { return ancilla_qubits_; }

 private:
  qcore::UnitaryMatrix u_;
  int ancilla_qubits_;
};

using AttackModel = std::variant<std::monostate, InterceptResendZ, MeasureResendZ,
                                 MeasureResendBell, Depolarizing, CollectiveInternal,
                                 CollectiveExternal>;

inline AttackModel no_attack() { return std::monostate{}; }

std::string attack_name(const AttackModel& model);

/// Qubits appended after the four protocol qubits for this model.
int ancilla_qubits(const AttackModel& model);

bool is_collective(const AttackModel& model);

/// cluster4() (x) |0...0> sized for the model's ancilla.
qcore::StateVector initial_joint_state(const AttackModel& model);

/// Applies the attack to a joint register of 4 + ancilla_qubits(model) qubits in
/// transit (before Alice and Bob act). Throws std::invalid_argument when the
/// register size does not match the model.
qcore::StateVector apply_attack(const AttackModel& model, const qcore::StateVector& joint_state,
                                RandomStream& rng);

}  // namespace cqkd::attacks
