#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "certilin/blackbox.hpp"
#include "certilin/field.hpp"
#include "certilin/polynomial.hpp"

namespace certilin {

enum class ProtocolId {
  fauv,              // generator certificate, u = v = e1 unless given
  fauv_merged,       // same with r0 = r1
  minpoly,           // random projections + merged generator certificate
  minpoly_complete,  // perfectly complete variant with a secondary projection
  det_diag,
  det_gamma,
  det_simple,
  charpoly,
};

std::string_view protocol_name(ProtocolId id);
std::optional<ProtocolId> parse_protocol(std::string_view name);
bool is_determinant_protocol(ProtocolId id);

// Smallest modulus the protocol accepts for dimension n.
std::uint64_t required_modulus(ProtocolId id, std::size_t n);
// Throws ConfigError("<protocol> requires p ≥ X") when p is below the threshold.
void check_field_size(ProtocolId id, std::size_t n, std::uint64_t p);

struct Singular {
  Vec witness;  // empty when decoded from an outcome line
  bool operator==(const Singular&) const = default;
};

using Certified = std::variant<Poly, Fp, Singular>;

struct Accept {
  Certified result;
};
struct Reject {
  std::string reason;
};
struct BadChallenge {
  std::string detail;
};
using Outcome = std::variant<Accept, Reject, BadChallenge>;

inline bool accepted(const Outcome& o) { return std::holds_alternative<Accept>(o); }
inline bool rejected(const Outcome& o) { return std::holds_alternative<Reject>(o); }
inline bool bad_challenge(const Outcome& o) { return std::holds_alternative<BadChallenge>(o); }

// "Accept det 5", "Reject bezout-check", ... (the outcome line minus its "outcome " prefix).
std::string outcome_text(const Outcome& o);
Outcome parse_outcome(const Field& F, std::string_view text);

// Verifier budgets for honest runs. Absent fields carry no bound.
struct Budget {
  std::optional<std::uint64_t> field_ops;
  std::optional<std::uint64_t> elements;
};
Budget verifier_budget(ProtocolId id, std::size_t n, std::uint64_t mu);

}  // namespace certilin
