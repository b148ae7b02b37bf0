#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "certilin/cost_meter.hpp"
#include "certilin/field.hpp"
#include "certilin/message.hpp"
#include "certilin/protocol.hpp"

namespace certilin {

struct TranscriptEntry {
  Role role;
  Message message;
  bool operator==(const TranscriptEntry&) const = default;
};

// Canonical text form:
//   certilin/1 <protocol-id> n=<n> p=<p> matrix=<hex digest>
//   <role> <kind> <payload>        (one line per message)
//   outcome <verdict> <payload>
// LF line endings, single spaces. Meters are not part of the text.
struct Transcript {
  ProtocolId protocol = ProtocolId::fauv;
  std::size_t n = 0;
  std::uint64_t p = 0;
  std::string digest;
  std::vector<TranscriptEntry> messages;
  std::optional<Outcome> outcome;

  CostMeter prover_meter;
  CostMeter verifier_meter;

  std::string header_line() const;
  // Header plus message lines, each LF-terminated. Challenge derivation hashes this.
  std::string prefix_text() const;
  std::string to_text() const;

  // Throws ParseError with the offending line number.
  static Transcript parse(std::string_view text);
};

}  // namespace certilin
