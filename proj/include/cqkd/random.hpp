#pragma once

#include <cstddef>
#include <cstdint>

namespace cqkd {

/// Counter-based random stream keyed by (seed, stream id).
///
/// Every protocol round draws from its own stream keyed by the round index, so
/// rounds can be evaluated in any order (or concurrently) and still reproduce
/// the serial transcript exactly. The generator is SplitMix64 over a mixed key;
/// it is not a cryptographic generator and is only meant for simulation.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform();

  /// Fair coin.
  int bit();

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// True with probability p.
  bool bernoulli(double p);

  /// Standard normal deviate (Box-Muller, no cached second value).
  double normal();

 private:
  std::uint64_t state_;
};

/// Stream ids at or above this value are reserved for non-round consumers
/// (sifting, attacker set-up) so they never collide with a round index.
inline constexpr std::uint64_t kReservedStreamBase = 0xF000'0000'0000'0000ULL;
inline constexpr std::uint64_t kSiftStream = kReservedStreamBase + 1;

}  // namespace cqkd
