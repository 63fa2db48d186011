#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "cqkd/qcore/gates.hpp"

namespace cqkd::protocol {

// Register layout of one round: the cluster state's qubits 1..4 sit at indices
// 0..3 (qubit 1 most significant); attacker ancillas follow.
inline constexpr int kAliceQubit = 0;
inline constexpr int kBobQubit = 1;
inline constexpr int kCharlieQubit3 = 2;
inline constexpr int kCharlieQubit4 = 3;
inline constexpr int kProtocolQubits = 4;

enum class LocalOp { Identity, Hadamard };

/// Case1 (I,I), Case2 (I,H), Case3 (H,I), Case4 (H,H) for (Alice, Bob).
enum class CaseKind { Case1, Case2, Case3, Case4 };

inline constexpr std::array<CaseKind, 4> kCases = {CaseKind::Case1, CaseKind::Case2,
                                                   CaseKind::Case3, CaseKind::Case4};

enum class Designation { Check, Key, Discard };

CaseKind case_of(LocalOp alice, LocalOp bob);
LocalOp alice_op_of(CaseKind c);
LocalOp bob_op_of(CaseKind c);

std::string_view to_string(LocalOp op);
std::string_view to_string(CaseKind c);
std::string_view to_string(Designation d);
LocalOp local_op_from_string(std::string_view s);
CaseKind case_from_string(std::string_view s);
Designation designation_from_string(std::string_view s);

struct RoundRecord {
  std::uint64_t index = 0;
  LocalOp alice_op = LocalOp::Identity;
  LocalOp bob_op = LocalOp::Identity;
  CaseKind case_kind = CaseKind::Case1;
  int mr_A = 0;
  int mr_B = 0;
  std::optional<int> mr_C3;
  std::optional<int> mr_C4;
  std::optional<qcore::BellOutcome> mr_C34;
  Designation designation = Designation::Discard;

  bool operator==(const RoundRecord&) const = default;
};

/// Consistency of a fully populated record with the expected case correlations. Throws std::invalid_argument
/// when the measurements present do not match the record's case.
bool consistency_check(const RoundRecord& record);

struct ProtocolConfig {
  std::uint64_t n = 0;
  double epsilon = 0.0;
  double check_fraction = 0.5;
  double error_threshold = 0.05;
  std::uint64_t seed = 0;

  /// N = round(4n(1 + epsilon)).
  std::uint64_t rounds() const;

  /// Throws std::invalid_argument when a field is out of range or N < 4.
  void validate() const;
};

using BitString = std::vector<std::uint8_t>;

struct SiftOutcome {
  BitString raw_key_CA;  // Alice's copy
  BitString raw_key_CB;  // Bob's copy
  BitString charlie_key_CA;
  BitString charlie_key_CB;
  std::map<CaseKind, double> case_error_rates;
  std::map<CaseKind, std::size_t> counts;
  std::map<CaseKind, std::size_t> checked;
  std::map<CaseKind, std::size_t> failed;
  bool aborted = false;
};

/// η = c / (q + b) as an exact fraction.
struct Rational {
  std::uint64_t num;
  std::uint64_t den;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

}  // namespace cqkd::protocol
