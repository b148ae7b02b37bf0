#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "certilin/field.hpp"
#include "certilin/polynomial.hpp"

namespace certilin {

enum class Role { prover, verifier };

// Projection vectors: a Verifier challenge in the minimal-polynomial
// certificate, or the public (u, v) statement of the generator certificate.
struct ProjectionMsg {
  Vec u, v;
  bool operator==(const ProjectionMsg&) const = default;
};
// (H, h): claimed generator and residue; (c^B, c^C) in the simple determinant protocol.
struct CommitmentMsg {
  Poly H, h;
  bool operator==(const CommitmentMsg&) const = default;
};
struct BezoutMsg {
  Poly phi, psi;
  bool operator==(const BezoutMsg&) const = default;
};
struct ChallengeMsg {
  Fp r;
  bool operator==(const ChallengeMsg&) const = default;
};
struct SolutionMsg {
  Vec w;
  bool operator==(const SolutionMsg&) const = default;
};
// The Prover found the shifted system inconsistent (f^{A,v}(r1) = 0).
struct BadShiftMsg {
  bool operator==(const BadShiftMsg&) const = default;
};
struct DiagonalPrecondMsg {
  Vec d, u, v;
  bool operator==(const DiagonalPrecondMsg&) const = default;
};
struct GammaPrecondMsg {
  Fp s, t;
  bool operator==(const GammaPrecondMsg&) const = default;
};
struct SingularityWitnessMsg {
  Vec w;
  bool operator==(const SingularityWitnessMsg&) const = default;
};
struct SecondaryProjectionMsg {
  std::optional<std::pair<Vec, Vec>> projection;
  bool operator==(const SecondaryProjectionMsg&) const = default;
};
// Claimed characteristic polynomial.
struct ClaimMsg {
  Poly c;
  bool operator==(const ClaimMsg&) const = default;
};

using Message = std::variant<ProjectionMsg, CommitmentMsg, BezoutMsg, ChallengeMsg, SolutionMsg,
                             BadShiftMsg, DiagonalPrecondMsg, GammaPrecondMsg,
                             SingularityWitnessMsg, SecondaryProjectionMsg, ClaimMsg>;

std::string_view kind_name(const Message& m);
std::string_view role_name(Role r);

// "<kind> <payload>" in canonical text.
std::string message_text(const Message& m);
// Inverse of message_text; throws UsageError on anything non-canonical.
Message parse_message(const Field& F, std::string_view kind, std::string_view payload);

std::string vec_to_text(const Vec& v);
Vec parse_vec(const Field& F, std::string_view text);

}  // namespace certilin
