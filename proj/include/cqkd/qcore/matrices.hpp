#pragma once

#include <Eigen/Dense>

#include <cstddef>

#include "cqkd/qcore/state.hpp"

namespace cqkd::qcore {

using ComplexMatrix = Eigen::MatrixXcd;

/// Square unitary matrix; U^dagger U = I is checked entrywise on construction.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(ComplexMatrix entries);

  static UnitaryMatrix identity(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const ComplexMatrix& matrix() const { return entries_; }
  Amplitude operator()(std::size_t row, std::size_t col) const { return entries_(row, col); }

 private:
  ComplexMatrix entries_;
};

/// Kronecker product; `a` acts on the more significant qubits.
UnitaryMatrix kron(const UnitaryMatrix& a, const UnitaryMatrix& b);

/// Density operator. Hermitian, unit trace and positive semidefinite (down to
/// -kTolerance) are checked on construction.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix entries);

  static DensityMatrix pure(const StateVector& state);

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const ComplexMatrix& matrix() const { return entries_; }
  Amplitude operator()(std::size_t row, std::size_t col) const { return entries_(row, col); }

  /// Ascending eigenvalues.
  Eigen::VectorXd eigenvalues() const;

 private:
  ComplexMatrix entries_;
};

/// Ascending eigenvalues of a Hermitian matrix.
Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m);

/// Eigenvalues of a 2x2 Hermitian matrix in closed form, (larger, smaller).
std::pair<double, double> hermitian_eigenvalues_2x2(const ComplexMatrix& m);

}  // namespace cqkd::qcore
