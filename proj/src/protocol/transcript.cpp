#include "cqkd/protocol/transcript.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

namespace cqkd::protocol {

using nlohmann::ordered_json;

namespace {

ordered_json optional_bit(const std::optional<int>& bit) {
  return bit ? ordered_json(*bit) : ordered_json(nullptr);
}

std::optional<int> read_bit(const ordered_json& v) {
  if (v.is_null()) return std::nullopt;
  const int b = v.get<int>();
  if (b != 0 && b != 1) throw std::invalid_argument("transcript: measurement is not a bit");
  return b;
}

}  // namespace

std::string to_transcript_line(const RoundRecord& r) {
  ordered_json j;
  j["index"] = r.index;
  j["alice_op"] = to_string(r.alice_op);
  j["bob_op"] = to_string(r.bob_op);
  j["case"] = to_string(r.case_kind);
  j["mr_A"] = r.mr_A;
  j["mr_B"] = r.mr_B;
  j["mr_C3"] = optional_bit(r.mr_C3);
  j["mr_C4"] = optional_bit(r.mr_C4);
  j["mr_C34"] = r.mr_C34 ? ordered_json(std::string(qcore::to_string(*r.mr_C34))) : ordered_json(nullptr);
  j["designation"] = to_string(r.designation);
  return j.dump();
}

RoundRecord from_transcript_line(const std::string& line) {
  const ordered_json j = ordered_json::parse(line);
  RoundRecord r;
  r.index = j.at("index").get<std::uint64_t>();
  r.alice_op = local_op_from_string(j.at("alice_op").get<std::string>());
  r.bob_op = local_op_from_string(j.at("bob_op").get<std::string>());
  r.case_kind = case_from_string(j.at("case").get<std::string>());
  r.mr_A = read_bit(j.at("mr_A")).value();
  r.mr_B = read_bit(j.at("mr_B")).value();
  r.mr_C3 = read_bit(j.at("mr_C3"));
  r.mr_C4 = read_bit(j.at("mr_C4"));
  if (!j.at("mr_C34").is_null()) r.mr_C34 = qcore::bell_outcome_from_string(j.at("mr_C34").get<std::string>());
  r.designation = designation_from_string(j.at("designation").get<std::string>());
  if (r.case_kind != case_of(r.alice_op, r.bob_op)) {
    throw std::invalid_argument("transcript: case does not match the operations");
  }
  return r;
}

void write_transcript(std::ostream& os, std::span<const RoundRecord> records) {
  for (const RoundRecord& r : records) os << to_transcript_line(r) << '\n';
}

std::vector<RoundRecord> read_transcript(std::istream& is) {
  std::vector<RoundRecord> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    out.push_back(from_transcript_line(line));
  }
  return out;
}

void write_check_report(std::ostream& os, std::span<const RoundRecord> records) {
  for (const DisclosedRound& d : check_disclosures(records)) {
    ordered_json j;
    j["index"] = d.index;
    j["alice_op"] = to_string(d.alice_op);
    j["bob_op"] = to_string(d.bob_op);
    j["mr_A"] = d.mr_A;
    j["mr_B"] = d.mr_B;
    os << j.dump() << '\n';
  }
}

ordered_json summary_json(const SiftOutcome& o, const ProtocolConfig& config) {
  ordered_json j;
  j["rounds"] = config.rounds();
  ordered_json counts, checked, rates;
  for (CaseKind c : kCases) {
    const std::string key(to_string(c));
    counts[key] = o.counts.at(c);
    checked[key] = o.checked.at(c);
    rates[key] = o.case_error_rates.at(c);
  }
  j["counts"] = counts;
  j["checked"] = checked;
  j["error_rates"] = rates;
  j["key_length_CA"] = o.raw_key_CA.size();
  j["key_length_CB"] = o.raw_key_CB.size();
  j["error_threshold"] = config.error_threshold;
  j["aborted"] = o.aborted;
  return j;
}

}  // namespace cqkd::protocol
