#include "cqkd/qcore/entropy.hpp"

#include <cmath>
#include <stdexcept>

namespace cqkd::qcore {
namespace {

double plog2p(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace

double shannon_entropy(std::span<const double> dist) {
  if (dist.empty()) throw std::invalid_argument("shannon_entropy: empty distribution");
  double sum = 0.0;
  double h = 0.0;
  for (double p : dist) {
    if (!(p >= 0.0)) throw std::invalid_argument("shannon_entropy: negative probability");
    sum += p;
    h += plog2p(p);
  }
  if (std::abs(sum - 1.0) > kTolerance) {
    throw std::invalid_argument("shannon_entropy: probabilities do not sum to 1");
  }
  return h;
}

double shannon_entropy(std::initializer_list<double> dist) {
  return shannon_entropy(std::span<const double>(dist.begin(), dist.size()));
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binary_entropy: p outside [0, 1]");
  return plog2p(p) + plog2p(1.0 - p);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double lambda : rho.eigenvalues()) {
    if (lambda < -kTolerance) throw std::invalid_argument("von_neumann_entropy: negative eigenvalue");
    s += plog2p(std::max(lambda, 0.0));
  }
  return s;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
  const Eigen::VectorXd eig = hermitian_eigenvalues(rho.matrix() - sigma.matrix());
  return std::min(1.0, 0.5 * eig.cwiseAbs().sum());
}

}  // namespace cqkd::qcore
