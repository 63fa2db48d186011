#include "cqkd/protocol/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cqkd::protocol {

CaseKind case_of(LocalOp alice, LocalOp bob) {
  if (alice == LocalOp::Identity) return bob == LocalOp::Identity ? CaseKind::Case1 : CaseKind::Case2;
  return bob == LocalOp::Identity ? CaseKind::Case3 : CaseKind::Case4;
}

LocalOp alice_op_of(CaseKind c) {
  return (c == CaseKind::Case1 || c == CaseKind::Case2) ? LocalOp::Identity : LocalOp::Hadamard;
}

LocalOp bob_op_of(CaseKind c) {
  return (c == CaseKind::Case1 || c == CaseKind::Case3) ? LocalOp::Identity : LocalOp::Hadamard;
}

std::string_view to_string(LocalOp op) { return op == LocalOp::Identity ? "I" : "H"; }

std::string_view to_string(CaseKind c) {
  switch (c) {
    case CaseKind::Case1: return "Case1";
    case CaseKind::Case2: return "Case2";
    case CaseKind::Case3: return "Case3";
    case CaseKind::Case4: return "Case4";
  }
  return "?";
}

std::string_view to_string(Designation d) {
  switch (d) {
    case Designation::Check: return "Check";
    case Designation::Key: return "Key";
    case Designation::Discard: return "Discard";
  }
  return "?";
}

LocalOp local_op_from_string(std::string_view s) {
  if (s == "I") return LocalOp::Identity;
  if (s == "H") return LocalOp::Hadamard;
  throw std::invalid_argument("unknown local operation '" + std::string(s) + "'");
}

CaseKind case_from_string(std::string_view s) {
  for (CaseKind c : kCases) {
    if (to_string(c) == s) return c;
  }
  throw std::invalid_argument("unknown case '" + std::string(s) + "'");
}

Designation designation_from_string(std::string_view s) {
  for (Designation d : {Designation::Check, Designation::Key, Designation::Discard}) {
    if (to_string(d) == s) return d;
  }
  throw std::invalid_argument("unknown designation '" + std::string(s) + "'");
}

bool consistency_check(const RoundRecord& r) {
  if (r.case_kind != case_of(r.alice_op, r.bob_op)) {
    throw std::invalid_argument("consistency_check: case does not match the announced operations");
  }
  const int a = r.mr_A;
  const int b = r.mr_B;
  if (r.case_kind == CaseKind::Case4) {
    if (!r.mr_C34 || r.mr_C3 || r.mr_C4) {
      throw std::invalid_argument("consistency_check: Case4 needs exactly the Bell outcome");
    }
    const bool expect_equal =
        *r.mr_C34 == qcore::BellOutcome::PhiMinus || *r.mr_C34 == qcore::BellOutcome::PsiPlus;
    return expect_equal ? a == b : a == (b ^ 1);
  }
  if (!r.mr_C3 || !r.mr_C4 || r.mr_C34) {
    throw std::invalid_argument("consistency_check: Cases 1-3 need both Z outcomes of Charlie");
  }
  const int c3 = *r.mr_C3;
  const int c4 = *r.mr_C4;
  switch (r.case_kind) {
    case CaseKind::Case1:
      return a == c4 && b == c3;
    case CaseKind::Case2:
      return a == c4 && b == (c3 ^ a);
    case CaseKind::Case3:
      return b == c3 && a == (c4 ^ b);
    case CaseKind::Case4:
      break;
  }
  return false;
}

std::uint64_t ProtocolConfig::rounds() const {
  return static_cast<std::uint64_t>(std::llround(4.0 * static_cast<double>(n) * (1.0 + epsilon)));
}

void ProtocolConfig::validate() const {
  if (n == 0) throw std::invalid_argument("ProtocolConfig: n must be positive");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("ProtocolConfig: epsilon must be a finite non-negative number");
  }
  if (!(check_fraction > 0.0 && check_fraction <= 1.0)) {
    throw std::invalid_argument("ProtocolConfig: check fraction must lie in (0, 1]");
  }
  if (!(error_threshold >= 0.0 && error_threshold <= 1.0)) {
    throw std::invalid_argument("ProtocolConfig: error threshold must lie in [0, 1]");
  }
  if (rounds() < 4) throw std::invalid_argument("ProtocolConfig: fewer than 4 rounds");
}

}  // namespace cqkd::protocol
