#include "cqkd/attacks/collective.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cqkd::attacks {

using qcore::Amplitude;
using qcore::ComplexMatrix;

namespace {

constexpr double kTol = qcore::kTolerance;

void require_unit(const AncillaState& v, std::size_t dim, const char* what) {
  if (static_cast<std::size_t>(v.size()) != dim) {
    throw std::invalid_argument(std::string(what) + ": ancilla state has dimension " +
                                std::to_string(v.size()) + ", expected " + std::to_string(dim));
  }
  if (std::abs(v.norm() - 1.0) > kTol) {
    throw std::invalid_argument(std::string(what) + ": ancilla state is not normalized");
  }
}

Amplitude random_phase(RandomStream& rng) {
  return std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
}

}  // namespace

qcore::UnitaryMatrix complete_unitary(std::size_t dim,
                                      const std::map<std::size_t, Eigen::VectorXcd>& columns) {
  const auto n = static_cast<Eigen::Index>(dim);
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  std::vector<Eigen::VectorXcd> basis;
  for (const auto& [col, v] : columns) {
    if (col >= dim || v.size() != n) throw std::invalid_argument("complete_unitary: bad column");
    for (const auto& w : basis) {
      if (std::abs(w.dot(v)) > kTol) {
        throw std::invalid_argument("complete_unitary: fixed columns are not orthogonal");
      }
    }
    if (std::abs(v.norm() - 1.0) > kTol) {
      throw std::invalid_argument("complete_unitary: fixed column is not normalized");
    }
    u.col(static_cast<Eigen::Index>(col)) = v;
    basis.push_back(v);
  }
  Eigen::Index candidate = 0;
  for (Eigen::Index col = 0; col < n; ++col) {
    if (columns.contains(static_cast<std::size_t>(col))) continue;
    while (true) {
      if (candidate >= n) throw std::logic_error("complete_unitary: ran out of basis vectors");
      Eigen::VectorXcd v = Eigen::VectorXcd::Unit(n, candidate++);
      // Two Gram-Schmidt passes keep the completion orthogonal to ~1e-15.
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& w : basis) v -= w.dot(v) * w;
      }
      const double len = v.norm();
      if (len < 1e-6) continue;
      v /= len;
      u.col(col) = v;
      basis.push_back(v);
      break;
    }
  }
  return qcore::UnitaryMatrix(std::move(u));
}

AttackModel constrained_attack(const CollectiveAttackParams& p) {
  if (std::abs(std::norm(p.a) + std::norm(p.b) - 1.0) > kTol ||
      std::abs(std::norm(p.c) + std::norm(p.d) - 1.0) > kTol) {
    throw std::invalid_argument("constrained_attack: |a|^2+|b|^2 and |c|^2+|d|^2 must equal 1");
  }
  const std::size_t d_anc = static_cast<std::size_t>(p.ancilla[0].size());
  if (d_anc < 2) throw std::invalid_argument("constrained_attack: ancilla dimension must be >= 2");
  for (const auto& e : p.ancilla) require_unit(e, d_anc, "constrained_attack");

  const auto dim = static_cast<Eigen::Index>(2 * d_anc);
  auto place = [&](std::size_t q, const AncillaState& e) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v.segment(static_cast<Eigen::Index>(q * d_anc), static_cast<Eigen::Index>(d_anc)) = e;
    return v;
  };
  const Eigen::VectorXcd image0 = p.a * place(0, p.ancilla[0]) + p.b * place(1, p.ancilla[1]);
  const Eigen::VectorXcd image1 = p.c * place(0, p.ancilla[2]) + p.d * place(1, p.ancilla[3]);
  if (std::abs(image0.dot(image1)) > kTol) {
    throw std::invalid_argument("constrained_attack: images of |0>|e> and |1>|e> are not orthogonal");
  }
  // Input |q>|e> with |e> = |0> sits at column q * d_anc.
  std::map<std::size_t, Eigen::VectorXcd> cols{{0, image0}, {d_anc, image1}};
  return CollectiveInternal(complete_unitary(2 * d_anc, cols));
}

AttackModel constrained_external_attack(const ExternalAttackParams& p) {
  const std::size_t d_anc = static_cast<std::size_t>(p.ancilla[0][0].size());
  if (d_anc < 2) throw std::invalid_argument("constrained_external_attack: ancilla dimension must be >= 2");
  const auto dim = static_cast<Eigen::Index>(4 * d_anc);
  std::map<std::size_t, Eigen::VectorXcd> cols;
  for (std::size_t in = 0; in < 4; ++in) {
    double weight = 0.0;
    Eigen::VectorXcd image = Eigen::VectorXcd::Zero(dim);
    for (std::size_t k = 0; k < 4; ++k) {
      require_unit(p.ancilla[in][k], d_anc, "constrained_external_attack");
      weight += std::norm(p.coeff[in][k]);
      image.segment(static_cast<Eigen::Index>(k * d_anc), static_cast<Eigen::Index>(d_anc)) +=
          p.coeff[in][k] * p.ancilla[in][k];
    }
    if (std::abs(weight - 1.0) > kTol) {
      throw std::invalid_argument("constrained_external_attack: coefficient row " +
                                  std::to_string(in) + " is not normalized");
    }
    cols.emplace(in * d_anc, image);
  }
  return CollectiveExternal(complete_unitary(4 * d_anc, cols));
}

qcore::UnitaryMatrix random_unitary(std::size_t dim, RandomStream& rng) {
  const auto n = static_cast<Eigen::Index>(dim);
  ComplexMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = Amplitude(rng.normal(), rng.normal());
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Amplitude diag = r(j, j);
    if (std::abs(diag) > 0.0) q.col(j) *= diag / std::abs(diag);
  }
  return qcore::UnitaryMatrix(std::move(q));
}

AncillaState random_unit_vector(std::size_t dim, RandomStream& rng) {
  AncillaState v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Amplitude(rng.normal(), rng.normal());
  return v / v.norm();
}

CollectiveAttackParams random_internal_params(RandomStream& rng) {
  CollectiveAttackParams p;
  const double theta = 0.5 * std::numbers::pi * rng.uniform();
  const double phi = 0.5 * std::numbers::pi * rng.uniform();
  p.a = std::cos(theta) * random_phase(rng);
  p.b = std::sin(theta) * random_phase(rng);
  p.c = std::sin(phi) * random_phase(rng);
  p.d = std::cos(phi) * random_phase(rng);
  const qcore::UnitaryMatrix frame = random_unitary(kInternalAncillaDim, rng);
  for (std::size_t k = 0; k < 4; ++k) p.ancilla[k] = frame.matrix().col(static_cast<Eigen::Index>(k));
  return p;
}

CollectiveAttackParams project_to_zero_error(CollectiveAttackParams p) {
  const Amplitude phase = std::abs(p.a) > 0.0 ? p.a / std::abs(p.a) : Amplitude{1.0};
  p.a = phase;
  p.d = phase;
  p.b = 0.0;
  p.c = 0.0;
  p.ancilla[3] = p.ancilla[0];
  return p;
}

CollectiveAttackParams zero_error_internal_params(RandomStream& rng) {
  CollectiveAttackParams p;
  p.a = random_phase(rng);
  p.d = p.a;
  p.b = 0.0;
  p.c = 0.0;
  p.ancilla[0] = random_unit_vector(kInternalAncillaDim, rng);
  p.ancilla[1] = random_unit_vector(kInternalAncillaDim, rng);
  p.ancilla[2] = random_unit_vector(kInternalAncillaDim, rng);
  p.ancilla[3] = p.ancilla[0];
  return p;
}

ExternalAttackParams random_external_params(RandomStream& rng) {
  ExternalAttackParams p;
  const qcore::UnitaryMatrix frame = random_unitary(kExternalAncillaDim, rng);
  for (std::size_t in = 0; in < 4; ++in) {
    double total = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      p.coeff[in][k] = Amplitude(rng.normal(), rng.normal());
      total += std::norm(p.coeff[in][k]);
      p.ancilla[in][k] = frame.matrix().col(static_cast<Eigen::Index>(4 * in + k));
    }
    for (auto& c : p.coeff[in]) c /= std::sqrt(total);
  }
  return p;
}

ExternalAttackParams project_to_zero_error(ExternalAttackParams p) {
  const Amplitude a0 = p.coeff[0][0];
  const Amplitude phase = std::abs(a0) > 0.0 ? a0 / std::abs(a0) : Amplitude{1.0};
  const AncillaState shared = p.ancilla[0][0];
  for (std::size_t in = 0; in < 4; ++in) {
    for (std::size_t k = 0; k < 4; ++k) p.coeff[in][k] = in == k ? phase : Amplitude{0.0};
    p.ancilla[in][in] = shared;
  }
  return p;
}

ExternalAttackParams zero_error_external_params(RandomStream& rng) {
  ExternalAttackParams p;
  for (auto& row : p.ancilla) {
    for (auto& e : row) e = random_unit_vector(kExternalAncillaDim, rng);
  }
  p.coeff[0][0] = random_phase(rng);
  return project_to_zero_error(std::move(p));
}

}  // namespace cqkd::attacks
