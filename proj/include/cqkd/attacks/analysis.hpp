#pragma once

#include <cstdint>
#include <map>

#include "cqkd/attacks/model.hpp"
#include "cqkd/protocol/types.hpp"

namespace cqkd::attacks {

using protocol::CaseKind;

/// Pre-measurement joint state of one round for a given case: attack applied,
/// then Alice's and Bob's operations and Charlie's Hadamards (Cases 2 and 3).
/// Only defined for attacks that act unitarily (none and the collective ones).
qcore::StateVector case_state(const AttackModel& model, CaseKind c);

/// Exact probability, per case, that a checked round violates the expected
/// correlations. No sampling: the Born weights of every violating outcome branch
/// are summed. Accepts the no-attack model and both collective models.
std::map<CaseKind, double> case_error_rates(const AttackModel& model);

/// Trace distance between the attacker's ancilla states conditioned on a
/// raw-key bit of 0 versus 1 (Alice's bit in her Identity rounds; for external
/// attacks also Bob's bit in his Identity rounds, reporting the larger value).
double eve_information(const AttackModel& model);

/// Analytic detection probability after M checked positions:
/// intercept-resend 1 - (1/2)^M, both measure-resend variants 1 - (3/4)^M.
double detection_curve(const AttackModel& model, unsigned positions);

/// Probability that a single checked position exposes the attack.
double per_position_detection(const AttackModel& model);

struct PositionRate {
  std::uint64_t positions = 0;
  std::uint64_t inconsistent = 0;
  double rate = 0.0;
  double sigma = 0.0;  // binomial standard error at the observed rate
};

/// Monte-Carlo: every simulated round (uniform random operations) is checked.
PositionRate checked_position_rate(const AttackModel& model, std::uint64_t positions,
                                   std::uint64_t seed);

struct DetectionEstimate {
  unsigned positions = 0;
  std::uint64_t trials = 0;
  std::uint64_t detected = 0;
  double estimate = 0.0;
  double ci_low = 0.0;  // Wilson score interval
  double ci_high = 0.0;
  double analytic = 0.0;
};

/// Monte-Carlo estimate of detection_curve: each trial checks `positions`
/// rounds and counts as detected if any of them is inconsistent.
DetectionEstimate detection_monte_carlo(const AttackModel& model, unsigned positions,
                                        std::uint64_t trials, std::uint64_t seed,
                                        double z = 1.959963984540054);

struct AttackStats {
  std::map<CaseKind, double> per_case_error;
  double detection_prob_per_check = 0.0;
  double eve_info = 0.0;
};

/// Exact statistics for the unitary attack models.
AttackStats attack_stats(const AttackModel& model);

}  // namespace cqkd::attacks
