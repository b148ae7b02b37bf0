#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "certilin/blackbox.hpp"
#include "certilin/challenge.hpp"
#include "certilin/errors.hpp"
#include "certilin/field.hpp"
#include "certilin/protocol.hpp"
#include "certilin/prover.hpp"
#include "certilin/transcript.hpp"

namespace certilin {

struct RunResult {
  Transcript transcript;
  Outcome outcome;
};

// Runs one session: the Verifier against `prover`, drawing from `challenges`.
// Checks the field size first (ConfigError).
RunResult run_session(const Statement& st, Prover& prover, ChallengeSource& challenges);

// The Verifier alone, against any endpoint. The transcript records every
// message as it is exchanged.
Outcome verify_session(const Statement& st, ProverEndpoint& prover, ChallengeSource& challenges,
                       Transcript& transcript);

RunResult cert_fauv(const Field& F, const BlackBox& A, const Vec& u, const Vec& v, Prover& prover,
                    std::uint64_t seed);
RunResult cert_fauv_merged(const Field& F, const BlackBox& A, const Vec& u, const Vec& v,
                           Prover& prover, std::uint64_t seed);
RunResult cert_minpoly(const Field& F, const BlackBox& A, Prover& prover, std::uint64_t seed,
                       bool perfectly_complete,
                       std::optional<std::pair<Vec, Vec>> forced_projection = std::nullopt);
RunResult cert_det_diag(const Field& F, const BlackBox& A, Prover& prover, std::uint64_t seed);
RunResult cert_det_gamma(const Field& F, const BlackBox& A, Prover& prover, std::uint64_t seed);
RunResult cert_simple_det(const Field& F, const SparseMatrix& A, Prover& prover, std::uint64_t seed);
RunResult cert_charpoly(const Field& F, const BlackBox& A, Prover& prover, std::uint64_t seed);

// Non-interactive run: every challenge is a hash of the transcript so far.
RunResult fiat_shamir(const Statement& st, Prover& prover);

// The statement does not match the transcript header (protocol aside).
class StatementMismatch : public Error {
 public:
  using Error::Error;
};

// Replays the Verifier over a recorded transcript for matrix A. Throws
// StatementMismatch when n, p or the matrix digest differ; a recorded
// outcome that disagrees with the replay is a Reject.
RunResult verify_noninteractive(const Transcript& t, const Field& F, const BlackBox& A);
RunResult verify_noninteractive(std::string_view text, const Field& F, const BlackBox& A);

}  // namespace certilin
