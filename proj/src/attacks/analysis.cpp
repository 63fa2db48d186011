#include "cqkd/attacks/analysis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cqkd/protocol/protocol.hpp"
#include "cqkd/qcore/entropy.hpp"
#include "cqkd/qcore/gates.hpp"
#include "cqkd/qcore/measure.hpp"

namespace cqkd::attacks {

using protocol::kAliceQubit;
using protocol::kBobQubit;
using protocol::kCharlieQubit3;
using protocol::kCharlieQubit4;
using protocol::kProtocolQubits;
using protocol::LocalOp;
using protocol::RoundRecord;
using qcore::Amplitude;
using qcore::StateVector;

namespace {

bool is_unitary_model(const AttackModel& model) {
  return std::holds_alternative<std::monostate>(model) || is_collective(model);
}

int bit_of(std::size_t index, int n, int q) { return (index & qcore::qubit_mask(n, q)) ? 1 : 0; }

RoundRecord record_for(CaseKind c) {
  RoundRecord r;
  r.alice_op = protocol::alice_op_of(c);
  r.bob_op = protocol::bob_op_of(c);
  r.case_kind = c;
  return r;
}

double violating_mass(const StateVector& s, CaseKind c) {
  const int n = s.num_qubits();
  double mass = 0.0;
  if (c != CaseKind::Case4) {
    for (std::size_t i = 0; i < s.dim(); ++i) {
      const double p = std::norm(s[i]);
      if (p == 0.0) continue;
      RoundRecord r = record_for(c);
      r.mr_A = bit_of(i, n, kAliceQubit);
      r.mr_B = bit_of(i, n, kBobQubit);
      r.mr_C3 = bit_of(i, n, kCharlieQubit3);
      r.mr_C4 = bit_of(i, n, kCharlieQubit4);
      if (!protocol::consistency_check(r)) mass += p;
    }
    return mass;
  }
  // Bell components of Charlie's pair for every (A, B, ancilla) basis index.
  const std::size_t m3 = qcore::qubit_mask(n, kCharlieQubit3);
  const std::size_t m4 = qcore::qubit_mask(n, kCharlieQubit4);
  const double h = 1.0 / std::numbers::sqrt2;
  for (std::size_t base = 0; base < s.dim(); ++base) {
    if (base & (m3 | m4)) continue;
    const Amplitude v00 = s[base], v01 = s[base | m4], v10 = s[base | m3], v11 = s[base | m3 | m4];
    const std::array<Amplitude, 4> comp = {(v00 + v11) * h, (v00 - v11) * h, (v01 + v10) * h,
                                           (v01 - v10) * h};
    for (std::size_t k = 0; k < 4; ++k) {
      const double p = std::norm(comp[k]);
      if (p == 0.0) continue;
      RoundRecord r = record_for(c);
      r.mr_A = bit_of(base, n, kAliceQubit);
      r.mr_B = bit_of(base, n, kBobQubit);
      r.mr_C34 = qcore::kBellOutcomes[k];
      if (!protocol::consistency_check(r)) mass += p;
    }
  }
  return mass;
}

StateVector attacked_state(const AttackModel& model) {
  RandomStream unused(0, 0);
  return apply_attack(model, initial_joint_state(model), unused);
}

// Trace distance between the ancilla states conditioned on `key_qubit` = 0 / 1.
double conditional_ancilla_distance(const StateVector& s, int key_qubit, int ancilla_qubits) {
  std::vector<int> keep{key_qubit};
  for (int k = 0; k < ancilla_qubits; ++k) keep.push_back(kProtocolQubits + k);
  const qcore::DensityMatrix rho = qcore::partial_trace(s, keep);
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << ancilla_qubits);
  const qcore::ComplexMatrix block0 = rho.matrix().block(0, 0, d, d);
  const qcore::ComplexMatrix block1 = rho.matrix().block(d, d, d, d);
  const double p0 = block0.trace().real();
  const double p1 = block1.trace().real();
  // A key bit that never takes one of its values is fully known to the attacker.
  if (p0 < 1e-12 || p1 < 1e-12) return 1.0;
  return qcore::trace_distance(qcore::DensityMatrix(block0 / p0), qcore::DensityMatrix(block1 / p1));
}

}  // namespace

StateVector case_state(const AttackModel& model, CaseKind c) {
  if (!is_unitary_model(model)) {
    throw std::invalid_argument("case_state: '" + attack_name(model) + "' is not a unitary attack");
  }
  StateVector s = attacked_state(model);
  const LocalOp alice = protocol::alice_op_of(c);
  const LocalOp bob = protocol::bob_op_of(c);
  if (alice == LocalOp::Hadamard) s = qcore::apply_unitary(s, qcore::hadamard(), {kAliceQubit});
  if (bob == LocalOp::Hadamard) s = qcore::apply_unitary(s, qcore::hadamard(), {kBobQubit});
  if (c == CaseKind::Case2) s = qcore::apply_unitary(s, qcore::hadamard(), {kCharlieQubit3});
  if (c == CaseKind::Case3) s = qcore::apply_unitary(s, qcore::hadamard(), {kCharlieQubit4});
  return s;
}

std::map<CaseKind, double> case_error_rates(const AttackModel& model) {
  std::map<CaseKind, double> rates;
  for (CaseKind c : protocol::kCases) rates[c] = violating_mass(case_state(model, c), c);
  return rates;
}

double eve_information(const AttackModel& model) {
  if (std::holds_alternative<std::monostate>(model)) return 0.0;
  if (!is_collective(model)) {
    throw std::invalid_argument("eve_information: '" + attack_name(model) + "' is not collective");
  }
  const StateVector s = attacked_state(model);
  const int extra = ancilla_qubits(model);
  double info = conditional_ancilla_distance(s, kAliceQubit, extra);
  if (std::holds_alternative<CollectiveExternal>(model)) {
    info = std::max(info, conditional_ancilla_distance(s, kBobQubit, extra));
  }
  return info;
}

double per_position_detection(const AttackModel& model) {
  if (std::holds_alternative<InterceptResendZ>(model)) return 0.5;
  if (std::holds_alternative<MeasureResendZ>(model) ||
      std::holds_alternative<MeasureResendBell>(model)) {
    return 0.25;
  }
  throw std::invalid_argument("detection_curve: unsupported attack '" + attack_name(model) + "'");
}

double detection_curve(const AttackModel& model, unsigned positions) {
  const double p = per_position_detection(model);
  return 1.0 - std::pow(1.0 - p, static_cast<double>(positions));
}

PositionRate checked_position_rate(const AttackModel& model, std::uint64_t positions,
                                   std::uint64_t seed) {
  PositionRate out;
  out.positions = positions;
  for (std::uint64_t i = 0; i < positions; ++i) {
    if (!protocol::consistency_check(protocol::generate_round(seed, i, model))) ++out.inconsistent;
  }
  if (positions > 0) {
    const double n = static_cast<double>(positions);
    out.rate = static_cast<double>(out.inconsistent) / n;
    out.sigma = std::sqrt(out.rate * (1.0 - out.rate) / n);
  }
  return out;
}

DetectionEstimate detection_monte_carlo(const AttackModel& model, unsigned positions,
                                        std::uint64_t trials, std::uint64_t seed, double z) {
  DetectionEstimate est;
  est.positions = positions;
  est.trials = trials;
  est.analytic = detection_curve(model, positions);
  std::uint64_t round_index = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    bool detected = false;
    for (unsigned m = 0; m < positions; ++m) {
      // Every position is simulated so the stream layout does not depend on outcomes.
      if (!protocol::consistency_check(protocol::generate_round(seed, round_index++, model))) {
        detected = true;
      }
    }
    if (detected) ++est.detected;
  }
  if (trials > 0) {
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(est.detected) / n;
    est.estimate = p;
    const double z2 = z * z;
    const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
    const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
    est.ci_low = est.detected == 0 ? 0.0 : std::max(0.0, centre - half);
    est.ci_high = est.detected == trials ? 1.0 : std::min(1.0, centre + half);
  }
  return est;
}

AttackStats attack_stats(const AttackModel& model) {
  AttackStats stats;
  stats.per_case_error = case_error_rates(model);
  for (const auto& [c, rate] : stats.per_case_error) stats.detection_prob_per_check += 0.25 * rate;
  stats.eve_info = eve_information(model);
  return stats;
}

}  // namespace cqkd::attacks
