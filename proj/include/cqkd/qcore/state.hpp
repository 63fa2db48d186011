#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cqkd::qcore {

using Amplitude = std::complex<double>;

inline constexpr double kTolerance = 1e-9;

/// Pure state of `num_qubits` qubits.
///
/// Basis ordering: qubit 0 is the most significant bit of the basis index, so
/// |q0 q1 q2 q3> sits at index q0*8 + q1*4 + q2*2 + q3. Construction checks
/// the length (2^num_qubits), finiteness, and normalization within kTolerance.
class StateVector {
 public:
  explicit StateVector(int num_qubits);  // |0...0>
  StateVector(int num_qubits, std::vector<Amplitude> amplitudes);

  static StateVector basis(int num_qubits, std::size_t index);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }
  Amplitude operator[](std::size_t index) const { return amplitudes_[index]; }

  double norm() const;

 private:
  int num_qubits_;
  std::vector<Amplitude> amplitudes_;
};

/// Bit mask of qubit `q` inside a basis index of an `num_qubits` register.
constexpr std::size_t qubit_mask(int num_qubits, int q) {
  return std::size_t{1} << (num_qubits - 1 - q);
}

/// <a|b>.
Amplitude inner_product(const StateVector& a, const StateVector& b);

/// a (x) b, with a's qubits in the more significant positions.
StateVector tensor(const StateVector& a, const StateVector& b);

/// Amplitude-level equality after removing the global phase, which is fixed by
/// the first amplitude of `a` whose magnitude exceeds the tolerance.
bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol = kTolerance);

/// Exact amplitude-level equality (phase included).
bool equal_amplitudes(const StateVector& a, const StateVector& b, double tol = kTolerance);

}  // namespace cqkd::qcore
