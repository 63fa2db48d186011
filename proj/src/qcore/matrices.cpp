#include "cqkd/qcore/matrices.hpp"

#include <cmath>
#include <stdexcept>

namespace cqkd::qcore {
namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix must be square and non-empty");
  }
  if (!m.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entry");
}

}  // namespace

UnitaryMatrix::UnitaryMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
  require_square(entries_, "UnitaryMatrix");
  const ComplexMatrix gram = entries_.adjoint() * entries_;
  const ComplexMatrix eye = ComplexMatrix::Identity(entries_.rows(), entries_.cols());
  if ((gram - eye).cwiseAbs().maxCoeff() > kTolerance) {
    throw std::invalid_argument("UnitaryMatrix: U^dagger U deviates from identity");
  }
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return UnitaryMatrix(ComplexMatrix::Identity(n, n));
}

UnitaryMatrix kron(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  const ComplexMatrix& x = a.matrix();
  const ComplexMatrix& y = b.matrix();
  ComplexMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return UnitaryMatrix(std::move(out));
}

DensityMatrix::DensityMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
  require_square(entries_, "DensityMatrix");
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kTolerance) {
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  }
  const Amplitude tr = entries_.trace();
  if (std::abs(tr - Amplitude{1.0}) > kTolerance) {
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  }
  if (eigenvalues().minCoeff() < -kTolerance) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& state) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(state.dim()));
  for (std::size_t i = 0; i < state.dim(); ++i) v(static_cast<Eigen::Index>(i)) = state[i];
  return DensityMatrix(v * v.adjoint());
}

Eigen::VectorXd DensityMatrix::eigenvalues() const { return hermitian_eigenvalues(entries_); }

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigenvalues: eigensolver did not converge");
  }
  return solver.eigenvalues();
}

std::pair<double, double> hermitian_eigenvalues_2x2(const ComplexMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("expected a 2x2 matrix");
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double off = std::abs(m(0, 1));
  const double mean = 0.5 * (a + d);
  const double radius = std::sqrt(0.25 * (a - d) * (a - d) + off * off);
  return {mean + radius, mean - radius};
}

}  // namespace cqkd::qcore
