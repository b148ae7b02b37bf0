#include "certilin/message.hpp"

#include <vector>

#include "certilin/errors.hpp"

namespace certilin {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<std::string_view> split_spaces(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t sp = s.find(' ', start);
    out.push_back(s.substr(start, sp == std::string_view::npos ? std::string_view::npos : sp - start));
    if (sp == std::string_view::npos) break;
    start = sp + 1;
  }
  return out;
}

void expect_fields(const std::vector<std::string_view>& f, std::size_t count, std::string_view kind) {
  if (f.size() != count) {
    throw UsageError(std::string(kind) + " expects " + std::to_string(count) + " payload fields, got " +
                     std::to_string(f.size()));
  }
}

}  // namespace

std::string_view role_name(Role r) { return r == Role::prover ? "prover" : "verifier"; }

std::string_view kind_name(const Message& m) {
  return std::visit(overloaded{
                        [](const ProjectionMsg&) { return std::string_view("projection"); },
                        [](const CommitmentMsg&) { return std::string_view("commitment"); },
                        [](const BezoutMsg&) { return std::string_view("bezout"); },
                        [](const ChallengeMsg&) { return std::string_view("challenge"); },
                        [](const SolutionMsg&) { return std::string_view("solution"); },
                        [](const BadShiftMsg&) { return std::string_view("bad-shift"); },
                        [](const DiagonalPrecondMsg&) { return std::string_view("precond-diag"); },
                        [](const GammaPrecondMsg&) { return std::string_view("precond-gamma"); },
                        [](const SingularityWitnessMsg&) { return std::string_view("singular"); },
                        [](const SecondaryProjectionMsg&) { return std::string_view("secondary"); },
                        [](const ClaimMsg&) { return std::string_view("claim"); },
                    },
                    m);
}

std::string vec_to_text(const Vec& v) {
  if (v.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += Field::to_text(v[i]);
  }
  return s;
}

Vec parse_vec(const Field& F, std::string_view text) {
  if (text == "-") return {};
  Vec out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(F.parse_text(
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string message_text(const Message& m) {
  std::string payload = std::visit(
      overloaded{
          [](const ProjectionMsg& x) { return vec_to_text(x.u) + " " + vec_to_text(x.v); },
          [](const CommitmentMsg& x) { return poly::to_text(x.H) + " " + poly::to_text(x.h); },
          [](const BezoutMsg& x) { return poly::to_text(x.phi) + " " + poly::to_text(x.psi); },
          [](const ChallengeMsg& x) { return Field::to_text(x.r); },
          [](const SolutionMsg& x) { return vec_to_text(x.w); },
          [](const BadShiftMsg&) { return std::string("-"); },
          [](const DiagonalPrecondMsg& x) {
            return vec_to_text(x.d) + " " + vec_to_text(x.u) + " " + vec_to_text(x.v);
          },
          [](const GammaPrecondMsg& x) { return Field::to_text(x.s) + " " + Field::to_text(x.t); },
          [](const SingularityWitnessMsg& x) { return vec_to_text(x.w); },
          [](const SecondaryProjectionMsg& x) {
            return x.projection ? vec_to_text(x.projection->first) + " " + vec_to_text(x.projection->second)
                                : std::string("-");
          },
          [](const ClaimMsg& x) { return poly::to_text(x.c); },
      },
      m);
  return std::string(kind_name(m)) + " " + payload;
}

Message parse_message(const Field& F, std::string_view kind, std::string_view payload) {
  const auto f = split_spaces(payload);
  if (kind == "projection") {
    expect_fields(f, 2, kind);
    return ProjectionMsg{parse_vec(F, f[0]), parse_vec(F, f[1])};
  }
  if (kind == "commitment") {
    expect_fields(f, 2, kind);
    return CommitmentMsg{poly::parse_text(F, f[0]), poly::parse_text(F, f[1])};
  }
  if (kind == "bezout") {
    expect_fields(f, 2, kind);
    return BezoutMsg{poly::parse_text(F, f[0]), poly::parse_text(F, f[1])};
  }
  if (kind == "challenge") {
    expect_fields(f, 1, kind);
    return ChallengeMsg{F.parse_text(f[0])};
  }
  if (kind == "solution") {
    expect_fields(f, 1, kind);
    return SolutionMsg{parse_vec(F, f[0])};
  }
  if (kind == "bad-shift") {
    expect_fields(f, 1, kind);
    if (f[0] != "-") throw UsageError("bad-shift carries no payload");
    return BadShiftMsg{};
  }
  if (kind == "precond-diag") {
    expect_fields(f, 3, kind);
    return DiagonalPrecondMsg{parse_vec(F, f[0]), parse_vec(F, f[1]), parse_vec(F, f[2])};
  }
  if (kind == "precond-gamma") {
    expect_fields(f, 2, kind);
    return GammaPrecondMsg{F.parse_text(f[0]), F.parse_text(f[1])};
  }
  if (kind == "singular") {
    expect_fields(f, 1, kind);
    return SingularityWitnessMsg{parse_vec(F, f[0])};
  }
  if (kind == "secondary") {
    if (f.size() == 1 && f[0] == "-") return SecondaryProjectionMsg{};
    expect_fields(f, 2, kind);
    return SecondaryProjectionMsg{std::make_pair(parse_vec(F, f[0]), parse_vec(F, f[1]))};
  }
  if (kind == "claim") {
    expect_fields(f, 1, kind);
    return ClaimMsg{poly::parse_text(F, f[0])};
  }
  throw UsageError("unknown message kind '" + std::string(kind) + "'");
}

}  // namespace certilin
