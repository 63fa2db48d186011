#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cqkd/attacks/model.hpp"
#include "cqkd/protocol/types.hpp"
#include "cqkd/random.hpp"

namespace cqkd::protocol {

struct RoundTrace {
  RoundRecord record;
  /// Intercept-resend only: the attacker's late measurement of the stored
  /// original qubit after applying Alice's announced operation.
  std::optional<int> attacker_memory_bit;
};

/// One round: prepare the cluster state, let the attack act in transit, then
/// Alice, Bob and Charlie operate and measure. Case-4 rounds come back
/// designated Check; all others are Discard until sifting.
RoundTrace run_round_traced(std::uint64_t index, LocalOp alice_op, LocalOp bob_op,
                            const attacks::AttackModel& attack, RandomStream& rng);

RoundRecord run_round(std::uint64_t index, LocalOp alice_op, LocalOp bob_op,
                      const attacks::AttackModel& attack, RandomStream& rng);

/// The round at `index` of a run seeded with `seed`, operations included.
RoundRecord generate_round(std::uint64_t seed, std::uint64_t index,
                           const attacks::AttackModel& attack);

/// Assigns Check / Key designations in place and builds both raw keys.
SiftOutcome sift(std::span<RoundRecord> records, const ProtocolConfig& config, RandomStream& rng);

struct ProtocolRun {
  std::vector<RoundRecord> records;
  SiftOutcome outcome;
};

/// Full run. `workers` > 1 splits the rounds across threads; the transcript is
/// identical to the serial one.
ProtocolRun run_protocol(const ProtocolConfig& config, const attacks::AttackModel& attack,
                         unsigned workers = 1);

/// Rounds with designation Check, with Charlie's measurements removed. This is
/// everything that goes over the public channel during the eavesdropping check.
struct DisclosedRound {
  std::uint64_t index;
  LocalOp alice_op;
  LocalOp bob_op;
  int mr_A;
  int mr_B;
};
std::vector<DisclosedRound> check_disclosures(std::span<const RoundRecord> records);

Rational qubit_efficiency(const ProtocolConfig& config);

}  // namespace cqkd::protocol
