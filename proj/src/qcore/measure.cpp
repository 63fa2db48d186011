#include "cqkd/qcore/measure.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "cqkd/qcore/kernels.hpp"

namespace cqkd::qcore {
namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void check_target(const StateVector& state, int target, const char* what) {
  if (target < 0 || target >= state.num_qubits()) {
    throw std::invalid_argument(std::string(what) + ": qubit " + std::to_string(target) +
                                " out of range");
  }
}

// Bell components of the (t1, t2) amplitudes {v00, v01, v10, v11}, in kBellOutcomes order.
std::array<Amplitude, 4> bell_components(const std::array<Amplitude, 4>& v) {
  return {(v[0] + v[3]) * kInvSqrt2, (v[0] - v[3]) * kInvSqrt2, (v[1] + v[2]) * kInvSqrt2,
          (v[1] - v[2]) * kInvSqrt2};
}

// Amplitudes of Bell state k on {00, 01, 10, 11}.
std::array<double, 4> bell_vector(std::size_t k) {
  switch (k) {
    case 0: return {kInvSqrt2, 0.0, 0.0, kInvSqrt2};
    case 1: return {kInvSqrt2, 0.0, 0.0, -kInvSqrt2};
    case 2: return {0.0, kInvSqrt2, kInvSqrt2, 0.0};
    default: return {0.0, kInvSqrt2, -kInvSqrt2, 0.0};
  }
}

struct PairLayout {
  std::size_t m1;
  std::size_t m2;
  std::array<std::size_t, 4> offsets() const { return {0, m2, m1, m1 | m2}; }
};

PairLayout pair_layout(const StateVector& state, int t1, int t2) {
  check_target(state, t1, "measure_bell");
  check_target(state, t2, "measure_bell");
  if (t1 == t2) throw std::invalid_argument("measure_bell: qubits must be distinct");
  return {qubit_mask(state.num_qubits(), t1), qubit_mask(state.num_qubits(), t2)};
}

}  // namespace

double probability_one(const StateVector& state, int target) {
  check_target(state, target, "probability_one");
  return kernels::active().prob_one(state.amplitudes().data(), state.dim(),
                                    qubit_mask(state.num_qubits(), target));
}

ZMeasurement measure_z(const StateVector& state, int target, double draw) {
  const double p1 = probability_one(state, target);
  const double p0 = kernels::active().norm_sq(state.amplitudes().data(), state.dim()) - p1;
  const int bit = draw * (p0 + p1) < p0 ? 0 : 1;
  const double p = bit == 0 ? p0 : p1;
  if (!(p > 0.0)) throw std::logic_error("measure_z: selected a zero-probability branch");

  const std::size_t mask = qubit_mask(state.num_qubits(), target);
  const double scale = 1.0 / std::sqrt(p);
  std::vector<Amplitude> amps(state.dim());
  for (std::size_t i = 0; i < state.dim(); ++i) {
    const bool one = (i & mask) != 0;
    if (one == (bit == 1)) amps[i] = state[i] * scale;
  }
  return {bit, StateVector(state.num_qubits(), std::move(amps))};
}

std::array<double, 4> bell_probabilities(const StateVector& state, int t1, int t2) {
  const PairLayout layout = pair_layout(state, t1, t2);
  const auto off = layout.offsets();
  std::array<double, 4> probs{};
  for (std::size_t base = 0; base < state.dim(); ++base) {
    if (base & (layout.m1 | layout.m2)) continue;
    const auto c = bell_components(
        {state[base | off[0]], state[base | off[1]], state[base | off[2]], state[base | off[3]]});
    for (std::size_t k = 0; k < 4; ++k) probs[k] += std::norm(c[k]);
  }
  return probs;
}

BellMeasurement measure_bell(const StateVector& state, int t1, int t2, double draw) {
  const std::array<double, 4> probs = bell_probabilities(state, t1, t2);
  const double total = probs[0] + probs[1] + probs[2] + probs[3];
  std::size_t chosen = 3;
  double cumulative = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    cumulative += probs[k];
    if (draw * total < cumulative) {
      chosen = k;
      break;
    }
  }
  while (!(probs[chosen] > 0.0) && chosen > 0) --chosen;  // guard the top edge of the range
  if (!(probs[chosen] > 0.0)) throw std::logic_error("measure_bell: zero-probability branch");

  const PairLayout layout = pair_layout(state, t1, t2);
  const auto off = layout.offsets();
  const std::array<double, 4> bell = bell_vector(chosen);
  const double scale = 1.0 / std::sqrt(probs[chosen]);
  std::vector<Amplitude> amps(state.dim());
  for (std::size_t base = 0; base < state.dim(); ++base) {
    if (base & (layout.m1 | layout.m2)) continue;
    const auto c = bell_components(
        {state[base | off[0]], state[base | off[1]], state[base | off[2]], state[base | off[3]]});
    for (std::size_t s = 0; s < 4; ++s) amps[base | off[s]] = c[chosen] * bell[s] * scale;
  }
  return {kBellOutcomes[chosen], StateVector(state.num_qubits(), std::move(amps))};
}

DensityMatrix partial_trace(const StateVector& state, std::span<const int> keep) {
  const int n = state.num_qubits();
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep list is empty");
  std::size_t keep_bits = 0;
  for (int q : keep) {
    if (q < 0 || q >= n) throw std::invalid_argument("partial_trace: qubit out of range");
    const std::size_t m = qubit_mask(n, q);
    if (keep_bits & m) throw std::invalid_argument("partial_trace: duplicate qubit");
    keep_bits |= m;
  }
  const std::size_t k = keep.size();
  const std::size_t sub_dim = std::size_t{1} << k;
  std::vector<std::size_t> offsets(sub_dim, 0);
  for (std::size_t s = 0; s < sub_dim; ++s) {
    for (std::size_t j = 0; j < k; ++j) {
      if (s & (std::size_t{1} << (k - 1 - j))) offsets[s] |= qubit_mask(n, keep[j]);
    }
  }
  const auto d = static_cast<Eigen::Index>(sub_dim);
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  for (std::size_t rest = 0; rest < state.dim(); ++rest) {
    if (rest & keep_bits) continue;
    for (std::size_t i = 0; i < sub_dim; ++i) {
      const Amplitude ai = state[rest | offsets[i]];
      if (ai == Amplitude{}) continue;
      for (std::size_t j = 0; j < sub_dim; ++j) {
        rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
            ai * std::conj(state[rest | offsets[j]]);
      }
    }
  }
  return DensityMatrix(std::move(rho));
}

DensityMatrix partial_trace(const StateVector& state, std::initializer_list<int> keep) {
  return partial_trace(state, std::span<const int>(keep.begin(), keep.size()));
}

}  // namespace cqkd::qcore
