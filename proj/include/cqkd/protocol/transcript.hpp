#pragma once

// Transcript files: one JSON object per line with the fields
//   index, alice_op, bob_op, case, mr_A, mr_B, mr_C3, mr_C4, mr_C34, designation
// in that order; measurements a round did not produce are written as null.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "cqkd/protocol/protocol.hpp"
#include "cqkd/protocol/types.hpp"

namespace cqkd::protocol {

std::string to_transcript_line(const RoundRecord& record);
RoundRecord from_transcript_line(const std::string& line);

void write_transcript(std::ostream& os, std::span<const RoundRecord> records);
std::vector<RoundRecord> read_transcript(std::istream& is);

/// Public check report: index, alice_op, bob_op, mr_A, mr_B for every Check round.
void write_check_report(std::ostream& os, std::span<const RoundRecord> records);

/// counts, checked, error rates, key lengths and the abort flag.
nlohmann::ordered_json summary_json(const SiftOutcome& outcome, const ProtocolConfig& config);

}  // namespace cqkd::protocol
