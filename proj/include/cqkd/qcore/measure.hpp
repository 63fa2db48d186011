#pragma once

#include <array>
#include <initializer_list>
#include <span>
#include <utility>

#include "cqkd/qcore/gates.hpp"
#include "cqkd/qcore/matrices.hpp"
#include "cqkd/qcore/state.hpp"

namespace cqkd::qcore {

struct ZMeasurement {
  int bit;
  StateVector post;
};

struct BellMeasurement {
  BellOutcome outcome;
  StateVector post;
};

/// P(outcome 1) for a Z measurement of `target`.
double probability_one(const StateVector& state, int target);

/// Z-basis measurement. Outcome 0 is selected when draw * (p0 + p1) < p0, so a
/// zero-probability branch is never chosen for draw in [0, 1).
ZMeasurement measure_z(const StateVector& state, int target, double draw);

/// Born weights of the four Bell projections on (t1, t2), indexed like kBellOutcomes.
std::array<double, 4> bell_probabilities(const StateVector& state, int t1, int t2);

/// Bell-basis measurement of the ordered pair (t1, t2); the pair is left in the
/// measured Bell state and the rest of the register is renormalized.
BellMeasurement measure_bell(const StateVector& state, int t1, int t2, double draw);

/// Reduced density matrix on `keep`; keep[0] becomes the most significant qubit.
DensityMatrix partial_trace(const StateVector& state, std::span<const int> keep);
DensityMatrix partial_trace(const StateVector& state, std::initializer_list<int> keep);

}  // namespace cqkd::qcore
