#include "cqkd/qcore/state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cqkd/qcore/kernels.hpp"

namespace cqkd::qcore {
namespace {

constexpr int kMaxQubits = 16;

void check_qubit_count(int num_qubits) {
  if (num_qubits <= 0 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("StateVector: qubit count must be in [1, 16], got " +
                                std::to_string(num_qubits));
  }
}

}  // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  check_qubit_count(num_qubits);
  amplitudes_.assign(std::size_t{1} << num_qubits, Amplitude{});
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(int num_qubits, std::vector<Amplitude> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  check_qubit_count(num_qubits);
  if (amplitudes_.size() != (std::size_t{1} << num_qubits)) {
    throw std::invalid_argument("StateVector: expected 2^" + std::to_string(num_qubits) +
                                " amplitudes, got " + std::to_string(amplitudes_.size()));
  }
  for (const Amplitude& a : amplitudes_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("StateVector: non-finite amplitude");
    }
  }
  if (std::abs(norm() - 1.0) > kTolerance) {
    throw std::invalid_argument("StateVector: amplitudes are not normalized (norm " +
                                std::to_string(norm()) + ")");
  }
}

StateVector StateVector::basis(int num_qubits, std::size_t index) {
  StateVector s(num_qubits);
  if (index >= s.dim()) throw std::invalid_argument("StateVector::basis: index out of range");
  std::vector<Amplitude> amps(s.dim());
  amps[index] = 1.0;
  return StateVector(num_qubits, std::move(amps));
}

double StateVector::norm() const {
  return std::sqrt(kernels::active().norm_sq(amplitudes_.data(), amplitudes_.size()));
}

Amplitude inner_product(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner_product: dimension mismatch");
  Amplitude acc{};
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  std::vector<Amplitude> amps;
  amps.reserve(a.dim() * b.dim());
  for (const Amplitude& x : a.amplitudes()) {
    for (const Amplitude& y : b.amplitudes()) amps.push_back(x * y);
  }
  return StateVector(a.num_qubits() + b.num_qubits(), std::move(amps));
}

bool equal_amplitudes(const StateVector& a, const StateVector& b, double tol) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (std::abs(a[i]) > tol) {
      if (std::abs(b[i]) <= tol) return false;
      const Amplitude phase = (b[i] / std::abs(b[i])) / (a[i] / std::abs(a[i]));
      for (std::size_t j = 0; j < a.dim(); ++j) {
        if (std::abs(a[j] * phase - b[j]) > tol) return false;
      }
      return true;
    }
  }
  return false;  // unreachable for normalized states
}

}  // namespace cqkd::qcore
