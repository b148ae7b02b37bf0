#include "certilin/protocol.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <utility>

#include "certilin/errors.hpp"

namespace certilin {
namespace {

constexpr std::array<std::pair<ProtocolId, std::string_view>, 8> kNames{{
    {ProtocolId::fauv, "fauv"},
    {ProtocolId::fauv_merged, "fauv-merged"},
    {ProtocolId::minpoly, "minpoly"},
    {ProtocolId::minpoly_complete, "minpoly-complete"},
    {ProtocolId::det_diag, "det-diag"},
    {ProtocolId::det_gamma, "det-gamma"},
    {ProtocolId::det_simple, "det-simple"},
    {ProtocolId::charpoly, "charpoly"},
}};

std::uint64_t ceil_log2(std::size_t n) { return n <= 1 ? 0 : std::bit_width(n - 1); }

}  // namespace

std::string_view protocol_name(ProtocolId id) {
  for (const auto& [k, name] : kNames) {
    if (k == id) return name;
  }
  throw UsageError("unknown protocol id");
}

std::optional<ProtocolId> parse_protocol(std::string_view name) {
  for (const auto& [k, s] : kNames) {
    if (s == name) return k;
  }
  return std::nullopt;
}

bool is_determinant_protocol(ProtocolId id) {
  return id == ProtocolId::det_diag || id == ProtocolId::det_gamma || id == ProtocolId::det_simple;
}

std::uint64_t required_modulus(ProtocolId id, std::size_t n) {
  const std::uint64_t m = n;
  const std::uint64_t merged = m == 0 ? 0 : 5 * m - 2;
  switch (id) {
    case ProtocolId::fauv:
      return 3 * m;
    case ProtocolId::fauv_merged:
    case ProtocolId::minpoly:
    case ProtocolId::minpoly_complete:
      return merged;
    case ProtocolId::det_diag:
      return std::max((m * (m - (m ? 1 : 0)) + 1) / 2, merged);
    case ProtocolId::det_gamma:
    case ProtocolId::det_simple:
    case ProtocolId::charpoly:
      return std::max(m * m - m, merged);
  }
  throw UsageError("unknown protocol id");
}

void check_field_size(ProtocolId id, std::size_t n, std::uint64_t p) {
  const std::uint64_t need = required_modulus(id, n);
  if (p < need) {
    throw ConfigError(std::string(protocol_name(id)) + " with n = " + std::to_string(n) +
                          " requires p ≥ " + std::to_string(need),
                      need);
  }
}

std::string outcome_text(const Outcome& o) {
  if (const auto* a = std::get_if<Accept>(&o)) {
    if (const auto* f = std::get_if<Poly>(&a->result)) return "Accept poly " + poly::to_text(*f);
    if (const auto* d = std::get_if<Fp>(&a->result)) return "Accept det " + Field::to_text(*d);
    return "Accept singular";
  }
  if (const auto* r = std::get_if<Reject>(&o)) return "Reject " + r->reason;
  return "BadChallenge " + std::get<BadChallenge>(o).detail;
}

Outcome parse_outcome(const Field& F, std::string_view text) {
  const auto sp = text.find(' ');
  if (sp == std::string_view::npos) throw UsageError("outcome without payload");
  const auto verdict = text.substr(0, sp);
  const auto payload = text.substr(sp + 1);
  if (payload.empty() || (payload.find(' ') != std::string_view::npos && verdict != "Accept")) {
    throw UsageError("malformed outcome payload");
  }
  if (verdict == "Reject") return Reject{std::string(payload)};
  if (verdict == "BadChallenge") return BadChallenge{std::string(payload)};
  if (verdict != "Accept") throw UsageError("unknown verdict '" + std::string(verdict) + "'");
  if (payload == "singular") return Accept{Singular{}};
  const auto sp2 = payload.find(' ');
  if (sp2 == std::string_view::npos) throw UsageError("malformed Accept payload");
  const auto what = payload.substr(0, sp2);
  const auto value = payload.substr(sp2 + 1);
  if (what == "poly") return Accept{poly::parse_text(F, value)};
  if (what == "det") return Accept{F.parse_text(value)};
  throw UsageError("unknown Accept payload '" + std::string(what) + "'");
}

Budget verifier_budget(ProtocolId id, std::size_t n, std::uint64_t mu) {
  const std::uint64_t m = n;
  const std::uint64_t lg = 4 * ceil_log2(n);
  switch (id) {
    case ProtocolId::fauv:
      return {mu + 17 * m, 4 * m};
    case ProtocolId::fauv_merged:
    case ProtocolId::minpoly:
      return {mu + 13 * m, 4 * m};
    case ProtocolId::minpoly_complete:
      return {2 * mu + 26 * m, 10 * m};
    case ProtocolId::det_diag:
      return {mu + 15 * m + lg, 8 * m};
    case ProtocolId::det_gamma:
      return {mu + 13 * m + lg, 5 * m};
    case ProtocolId::det_simple:
      return {};
    case ProtocolId::charpoly:
      return {mu + 17 * m + lg, 6 * m};
  }
  return {};
}

}  // namespace certilin
