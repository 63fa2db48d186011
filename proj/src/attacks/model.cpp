#include "cqkd/attacks/model.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cqkd/protocol/types.hpp"
#include "cqkd/qcore/gates.hpp"
#include "cqkd/qcore/measure.hpp"

namespace cqkd::attacks {

using qcore::StateVector;
using protocol::kAliceQubit;
using protocol::kBobQubit;
using protocol::kProtocolQubits;

namespace {

int ancilla_qubits_for(std::size_t dim, std::size_t system_dim, const char* what) {
  if (dim % system_dim != 0 || !std::has_single_bit(dim / system_dim) || dim / system_dim < 2) {
    throw std::invalid_argument(std::string(what) + ": unitary dimension " + std::to_string(dim) +
                                " is not " + std::to_string(system_dim) +
                                " times a power-of-two ancilla dimension >= 2");
  }
  return std::countr_zero(dim / system_dim);
}

}  // namespace

Depolarizing::Depolarizing(double q) : q_(q) {
  if (!(q >= 0.0 && q <= 0.5)) throw std::invalid_argument("Depolarizing: Q must lie in [0, 0.5]");
}

CollectiveInternal::CollectiveInternal(qcore::UnitaryMatrix u)
    : u_(std::move(u)), ancilla_qubits_(ancilla_qubits_for(u_.dim(), 2, "CollectiveInternal")) {}

CollectiveExternal::CollectiveExternal(qcore::UnitaryMatrix u)
    : u_(std::move(u)), ancilla_qubits_(ancilla_qubits_for(u_.dim(), 4, "CollectiveExternal")) {}

std::string attack_name(const AttackModel& model) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "none"; }
    std::string operator()(const InterceptResendZ&) const { return "intercept-resend"; }
    std::string operator()(const MeasureResendZ&) const { return "measure-resend"; }
    std::string operator()(const MeasureResendBell&) const { return "measure-resend-bell"; }
    std::string operator()(const Depolarizing& d) const {
      std::ostringstream os;
      os << "depolarizing:" << d.q();
      return os.str();
    }
    std::string operator()(const CollectiveInternal&) const { return "collective"; }
    std::string operator()(const CollectiveExternal&) const { return "collective-external"; }
  };
  return std::visit(Visitor{}, model);
}

int ancilla_qubits(const AttackModel& model) {
  if (std::holds_alternative<InterceptResendZ>(model)) return 1;
  if (const auto* c = std::get_if<CollectiveInternal>(&model)) return c->ancilla_qubits();
  if (const auto* c = std::get_if<CollectiveExternal>(&model)) return c->ancilla_qubits();
  return 0;
}

bool is_collective(const AttackModel& model) {
  return std::holds_alternative<CollectiveInternal>(model) ||
         std::holds_alternative<CollectiveExternal>(model);
}

StateVector initial_joint_state(const AttackModel& model) {
  const int extra = ancilla_qubits(model);
  if (extra == 0) return qcore::cluster4();
  return qcore::tensor(qcore::cluster4(), StateVector(extra));
}

StateVector apply_attack(const AttackModel& model, const StateVector& joint_state,
                         RandomStream& rng) {
  const int extra = ancilla_qubits(model);
  if (joint_state.num_qubits() != kProtocolQubits + extra) {
    throw std::invalid_argument("apply_attack: register has " +
                                std::to_string(joint_state.num_qubits()) + " qubits, model '" +
                                attack_name(model) + "' needs " +
                                std::to_string(kProtocolQubits + extra));
  }
  std::vector<int> ancilla(static_cast<std::size_t>(extra));
  for (int k = 0; k < extra; ++k) ancilla[static_cast<std::size_t>(k)] = kProtocolQubits + k;

  struct Visitor {
    const StateVector& s;
    RandomStream& rng;
    const std::vector<int>& ancilla;

    StateVector operator()(std::monostate) const { return s; }

    StateVector operator()(const InterceptResendZ&) const {
      // Move the original into the (fresh |0>) memory, then prepare the fake.
      static const qcore::UnitaryMatrix swap = [] {
        qcore::ComplexMatrix m = qcore::ComplexMatrix::Zero(4, 4);
        m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
        return qcore::UnitaryMatrix(m);
      }();
      StateVector out = qcore::apply_unitary(s, swap, {kAliceQubit, ancilla.at(0)});
      if (rng.bit()) out = qcore::apply_unitary(out, qcore::pauli_x(), {kAliceQubit});
      return out;
    }

    StateVector operator()(const MeasureResendZ&) const {
      return qcore::measure_z(s, kAliceQubit, rng.uniform()).post;
    }

    StateVector operator()(const MeasureResendBell&) const {
      return qcore::measure_bell(s, kAliceQubit, kBobQubit, rng.uniform()).post;
    }

    StateVector operator()(const Depolarizing& d) const {
      StateVector out = s;
      if (rng.bernoulli(d.q())) out = qcore::apply_unitary(out, qcore::pauli_x(), {kAliceQubit});
      if (rng.bernoulli(d.q())) out = qcore::apply_unitary(out, qcore::pauli_z(), {kAliceQubit});
      return out;
    }

    StateVector operator()(const CollectiveInternal& c) const {
      std::vector<int> targets{kAliceQubit};
      targets.insert(targets.end(), ancilla.begin(), ancilla.end());
      return qcore::apply_unitary(s, c.unitary(), targets);
    }

    StateVector operator()(const CollectiveExternal& c) const {
      std::vector<int> targets{kAliceQubit, kBobQubit};
      targets.insert(targets.end(), ancilla.begin(), ancilla.end());
      return qcore::apply_unitary(s, c.unitary(), targets);
    }
  };
  return std::visit(Visitor{joint_state, rng, ancilla}, model);
}

}  // namespace cqkd::attacks
