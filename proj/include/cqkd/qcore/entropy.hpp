#pragma once

#include <span>

#include "cqkd/qcore/matrices.hpp"

namespace cqkd::qcore {

// All entropies are in bits; 0 log 0 is taken as 0.

double shannon_entropy(std::span<const double> dist);
double shannon_entropy(std::initializer_list<double> dist);

double binary_entropy(double p);

/// Eigenvalues in [-1e-9, 0) are clamped to zero.
double von_neumann_entropy(const DensityMatrix& rho);

/// 1/2 sum |eig(rho - sigma)|.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace cqkd::qcore
