#include "cqkd/qcore/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "cqkd/qcore/kernels.hpp"

namespace cqkd::qcore {
namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

UnitaryMatrix make_2x2(Amplitude m00, Amplitude m01, Amplitude m10, Amplitude m11) {
  ComplexMatrix m(2, 2);
  m << m00, m01, m10, m11;
  return UnitaryMatrix(std::move(m));
}

void validate_targets(int num_qubits, std::span<const int> targets) {
  if (targets.empty()) throw std::invalid_argument("apply_unitary: no target qubits");
  std::size_t seen = 0;
  for (int t : targets) {
    if (t < 0 || t >= num_qubits) {
      throw std::invalid_argument("apply_unitary: target qubit " + std::to_string(t) +
                                  " out of range");
    }
    const std::size_t bit = std::size_t{1} << t;
    if (seen & bit) throw std::invalid_argument("apply_unitary: duplicate target qubit");
    seen |= bit;
  }
}

}  // namespace

std::string_view to_string(BellOutcome kind) {
  switch (kind) {
    case BellOutcome::PhiPlus: return "PhiPlus";
    case BellOutcome::PhiMinus: return "PhiMinus";
    case BellOutcome::PsiPlus: return "PsiPlus";
    case BellOutcome::PsiMinus: return "PsiMinus";
  }
  return "?";
}

BellOutcome bell_outcome_from_string(std::string_view name) {
  for (BellOutcome k : kBellOutcomes) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown Bell outcome '" + std::string(name) + "'");
}

const UnitaryMatrix& hadamard() {
  static const UnitaryMatrix h = make_2x2(kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2);
  return h;
}

const UnitaryMatrix& pauli_x() {
  static const UnitaryMatrix x = make_2x2(0.0, 1.0, 1.0, 0.0);
  return x;
}

const UnitaryMatrix& pauli_z() {
  static const UnitaryMatrix z = make_2x2(1.0, 0.0, 0.0, -1.0);
  return z;
}

const UnitaryMatrix& identity2() {
  static const UnitaryMatrix i = make_2x2(1.0, 0.0, 0.0, 1.0);
  return i;
}

StateVector bell_state(BellOutcome kind) {
  std::vector<Amplitude> a(4);
  switch (kind) {
    case BellOutcome::PhiPlus: a[0b00] = kInvSqrt2; a[0b11] = kInvSqrt2; break;
    case BellOutcome::PhiMinus: a[0b00] = kInvSqrt2; a[0b11] = -kInvSqrt2; break;
    case BellOutcome::PsiPlus: a[0b01] = kInvSqrt2; a[0b10] = kInvSqrt2; break;
    case BellOutcome::PsiMinus: a[0b01] = kInvSqrt2; a[0b10] = -kInvSqrt2; break;
  }
  return StateVector(2, std::move(a));
}

StateVector cluster4() {
  std::vector<Amplitude> a(16);
  a[0b0000] = 0.5;
  a[0b0110] = 0.5;
  a[0b1001] = 0.5;
  a[0b1111] = -0.5;
  return StateVector(4, std::move(a));
}

StateVector apply_unitary(const StateVector& state, const UnitaryMatrix& u,
                          std::span<const int> targets) {
  const int n = state.num_qubits();
  validate_targets(n, targets);
  const std::size_t k = targets.size();
  if (u.dim() != (std::size_t{1} << k)) {
    throw std::invalid_argument("apply_unitary: unitary dimension " + std::to_string(u.dim()) +
                                " does not match " + std::to_string(k) + " target qubit(s)");
  }
  std::vector<Amplitude> amps(state.amplitudes().begin(), state.amplitudes().end());

  if (k == 1) {
    const kernels::Gate2 g{u(0, 0), u(0, 1), u(1, 0), u(1, 1)};
    kernels::active().apply_1q(amps.data(), amps.size(), qubit_mask(n, targets[0]), g);
    return StateVector(n, std::move(amps));
  }

  // offsets[s] is the basis-index contribution of local sub-index s.
  const std::size_t sub_dim = u.dim();
  std::vector<std::size_t> offsets(sub_dim, 0);
  std::size_t target_bits = 0;
  for (std::size_t s = 0; s < sub_dim; ++s) {
    for (std::size_t j = 0; j < k; ++j) {
      if (s & (std::size_t{1} << (k - 1 - j))) offsets[s] |= qubit_mask(n, targets[j]);
    }
  }
  for (int t : targets) target_bits |= qubit_mask(n, t);

  const ComplexMatrix& m = u.matrix();
  std::vector<Amplitude> in(sub_dim);
  for (std::size_t base = 0; base < amps.size(); ++base) {
    if (base & target_bits) continue;
    for (std::size_t s = 0; s < sub_dim; ++s) in[s] = amps[base | offsets[s]];
    for (std::size_t r = 0; r < sub_dim; ++r) {
      Amplitude acc{};
      for (std::size_t c = 0; c < sub_dim; ++c) {
        acc += m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
      }
      amps[base | offsets[r]] = acc;
    }
  }
  return StateVector(n, std::move(amps));
}

StateVector apply_unitary(const StateVector& state, const UnitaryMatrix& u,
                          std::initializer_list<int> targets) {
  return apply_unitary(state, u, std::span<const int>(targets.begin(), targets.size()));
}

}  // namespace cqkd::qcore
