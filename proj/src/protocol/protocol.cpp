#include "cqkd/protocol/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "cqkd/qcore/gates.hpp"
#include "cqkd/qcore/measure.hpp"

namespace cqkd::protocol {

using qcore::StateVector;

namespace {

StateVector apply_local(const StateVector& s, LocalOp op, int qubit) {
  if (op == LocalOp::Identity) return s;
  return qcore::apply_unitary(s, qcore::hadamard(), {qubit});
}

int measure_into(StateVector& s, int qubit, RandomStream& rng) {
  auto m = qcore::measure_z(s, qubit, rng.uniform());
  s = std::move(m.post);
  return m.bit;
}

}  // namespace

RoundTrace run_round_traced(std::uint64_t index, LocalOp alice_op, LocalOp bob_op,
                            const attacks::AttackModel& attack, RandomStream& rng) {
  StateVector state = attacks::apply_attack(attack, attacks::initial_joint_state(attack), rng);

  RoundTrace trace;
  RoundRecord& r = trace.record;
  r.index = index;
  r.alice_op = alice_op;
  r.bob_op = bob_op;
  r.case_kind = case_of(alice_op, bob_op);

  state = apply_local(state, alice_op, kAliceQubit);
  r.mr_A = measure_into(state, kAliceQubit, rng);
  state = apply_local(state, bob_op, kBobQubit);
  r.mr_B = measure_into(state, kBobQubit, rng);

  // Charlie mirrors Bob on qubit 3 and Alice on qubit 4, except in Case 4.
  if (r.case_kind == CaseKind::Case4) {
    auto bell = qcore::measure_bell(state, kCharlieQubit3, kCharlieQubit4, rng.uniform());
    state = std::move(bell.post);
    r.mr_C34 = bell.outcome;
    r.designation = Designation::Check;
  } else {
    state = apply_local(state, bob_op, kCharlieQubit3);
    state = apply_local(state, alice_op, kCharlieQubit4);
    r.mr_C3 = measure_into(state, kCharlieQubit3, rng);
    r.mr_C4 = measure_into(state, kCharlieQubit4, rng);
    r.designation = Designation::Discard;
  }

  if (std::holds_alternative<attacks::InterceptResendZ>(attack)) {
    // The stored original is measured only after Alice's announcement.
    const int memory = kProtocolQubits;
    state = apply_local(state, alice_op, memory);
    trace.attacker_memory_bit = measure_into(state, memory, rng);
  }
  return trace;
}

RoundRecord run_round(std::uint64_t index, LocalOp alice_op, LocalOp bob_op,
                      const attacks::AttackModel& attack, RandomStream& rng) {
  return run_round_traced(index, alice_op, bob_op, attack, rng).record;
}

RoundRecord generate_round(std::uint64_t seed, std::uint64_t index,
                           const attacks::AttackModel& attack) {
  RandomStream rng(seed, index);
  const LocalOp alice = rng.bit() ? LocalOp::Hadamard : LocalOp::Identity;
  const LocalOp bob = rng.bit() ? LocalOp::Hadamard : LocalOp::Identity;
  return run_round(index, alice, bob, attack, rng);
}

SiftOutcome sift(std::span<RoundRecord> records, const ProtocolConfig& config, RandomStream& rng) {
  SiftOutcome out;
  std::map<CaseKind, std::vector<std::size_t>> positions;
  for (CaseKind c : kCases) {
    out.counts[c] = 0;
    out.checked[c] = 0;
    out.failed[c] = 0;
    out.case_error_rates[c] = 0.0;
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    positions[records[i].case_kind].push_back(i);
    ++out.counts[records[i].case_kind];
  }

  for (CaseKind c : kCases) {
    std::vector<std::size_t>& pos = positions[c];
    if (c == CaseKind::Case4) {
      for (std::size_t i : pos) records[i].designation = Designation::Check;
      continue;
    }
    const auto n_check = static_cast<std::size_t>(
        std::floor(config.check_fraction * static_cast<double>(pos.size()) + 1e-9));
    // Partial Fisher-Yates: the first n_check entries become the check sample.
    for (std::size_t k = 0; k < n_check; ++k) {
      const std::size_t j = k + static_cast<std::size_t>(rng.below(pos.size() - k));
      std::swap(pos[k], pos[j]);
    }
    for (std::size_t k = 0; k < pos.size(); ++k) {
      records[pos[k]].designation = k < n_check ? Designation::Check : Designation::Key;
    }
  }

  for (const RoundRecord& r : records) {
    if (r.designation == Designation::Check) {
      ++out.checked[r.case_kind];
      if (!consistency_check(r)) ++out.failed[r.case_kind];
      continue;
    }
    if (r.designation != Designation::Key) continue;
    if (r.case_kind == CaseKind::Case1 || r.case_kind == CaseKind::Case2) {
      out.raw_key_CA.push_back(static_cast<std::uint8_t>(r.mr_A));
      out.charlie_key_CA.push_back(static_cast<std::uint8_t>(*r.mr_C4));
    }
    if (r.case_kind == CaseKind::Case1 || r.case_kind == CaseKind::Case3) {
      out.raw_key_CB.push_back(static_cast<std::uint8_t>(r.mr_B));
      out.charlie_key_CB.push_back(static_cast<std::uint8_t>(*r.mr_C3));
    }
  }

  for (CaseKind c : kCases) {
    if (out.checked[c] > 0) {
      out.case_error_rates[c] =
          static_cast<double>(out.failed[c]) / static_cast<double>(out.checked[c]);
    }
    if (out.case_error_rates[c] > config.error_threshold) out.aborted = true;
  }
  return out;
}

ProtocolRun run_protocol(const ProtocolConfig& config, const attacks::AttackModel& attack,
                         unsigned workers) {
  config.validate();
  const std::uint64_t total = config.rounds();
  ProtocolRun run;
  run.records.resize(total);

  auto fill = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) run.records[i] = generate_round(config.seed, i, attack);
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::min<std::uint64_t>(total, 64))));
  if (workers == 1) {
    fill(0, total);
  } else {
    std::vector<std::jthread> pool;
    const std::uint64_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = std::min(total, w * chunk);
      const std::uint64_t end = std::min(total, begin + chunk);
      pool.emplace_back(fill, begin, end);
    }
  }

  RandomStream sift_rng(config.seed, kSiftStream);
  run.outcome = sift(run.records, config, sift_rng);
  return run;
}

std::vector<DisclosedRound> check_disclosures(std::span<const RoundRecord> records) {
  std::vector<DisclosedRound> out;
  for (const RoundRecord& r : records) {
    if (r.designation != Designation::Check) continue;
    out.push_back({r.index, r.alice_op, r.bob_op, r.mr_A, r.mr_B});
  }
  return out;
}

Rational qubit_efficiency(const ProtocolConfig& config) {
  config.validate();
  // Per round: Case 1 keys two bits, Cases 2 and 3 one bit each, and half of
  // every case is spent on checking, so c = N/2 raw-key bits on average.
  // Charlie prepares q = 4N qubits and Alice and Bob prepare none (b = 0).
  const std::uint64_t rounds = config.rounds();
  const std::uint64_t c_twice = rounds;  // 2c
  const std::uint64_t q_twice = 2 * 4 * rounds;
  const std::uint64_t b = 0;
  const std::uint64_t g = std::gcd(c_twice, q_twice + b);
  return {c_twice / g, (q_twice + b) / g};
}

}  // namespace cqkd::protocol
