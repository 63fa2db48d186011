#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "cqkd/protocol/types.hpp"

namespace cqkd::keyrate {

/// Channel statistics Charlie can observe. p_ij is the probability that Alice
/// measures i and Charlie measures j on qubit 4 in the key-generating cases;
/// pc / pin are the Case-3 consistency / inconsistency probabilities.
struct ObservedStats {
  double p00 = 0.5;
  double p01 = 0.0;
  double p10 = 0.0;
  double p11 = 0.5;
  double pc = 1.0;
  double pin = 0.0;

  /// Throws std::invalid_argument unless every entry is in [0, 1] and both
  /// groups sum to 1 within 1e-9.
  void validate() const;
};

struct KeyRateReport {
  double H_AC = 0.0;        // H(A|C)
  double S_AEF = 0.0;       // S(AEF) = H(p00, p01, p10, p11)
  double S_EF_bound = 0.0;  // upper bound on S(EF)
  double B = 0.0;           // lower bound on |<e0|e3>|^2
  double lambda_tilde = 0.5;
  double r_lower = 0.0;
};

/// Depolarizing channel with error rate q in [0, 0.5].
ObservedStats stats_from_Q(double q);

/// Empirical estimate from a transcript: p_ij over Case-1 and Case-2 rounds,
/// pc over Case-3 rounds. Throws std::invalid_argument when either group is empty.
ObservedStats stats_from_transcript(std::span<const protocol::RoundRecord> records);

double conditional_entropy_H_AC(const ObservedStats& s);

/// B = |(pc - pin) - 2 sqrt(p01 p10)|^2.
double bound_B(const ObservedStats& s);

/// 1/2 + sqrt((p00 - p11)^2 + B) / (2 (p00 + p11)), clamped to 1. Throws
/// std::domain_error when p00 + p11 = 0.
double lambda_tilde(const ObservedStats& s);

KeyRateReport key_rate_lower(const ObservedStats& s);

struct ThresholdResult {
  double threshold = 0.0;
  double bracket_width = 0.0;
  int iterations = 0;
};

/// Root of r_lower(stats_from_Q(Q)) by bisection on [1e-6, 0.25] down to a
/// bracket narrower than `tolerance`. Throws std::runtime_error without a sign change.
ThresholdResult noise_threshold(double tolerance = 1e-6);

struct CurvePoint {
  double q;
  double r_lower;
};

/// `steps` evenly spaced points on [q_min, q_max] (both ends included).
std::vector<CurvePoint> key_rate_curve(double q_min, double q_max, std::size_t steps);

}  // namespace cqkd::keyrate
