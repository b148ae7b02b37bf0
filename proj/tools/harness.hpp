#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "certilin/blackbox.hpp"
#include "certilin/field.hpp"
#include "certilin/protocol.hpp"
#include "certilin/prover.hpp"
#include "certilin/rng.hpp"

namespace certilin::harness {

// random_sparse plus a random non-zero diagonal, so the matrix is
// nonsingular with high probability. `singular` empties the last row.
SparseMatrix trial_matrix(const Field& F, std::size_t n, double density, SeededRng& rng,
                          bool singular = false);

struct SoundnessBound {
  double value = 1.0;
  // The strategy leaves the certified claim true (e.g. forged Bezout
  // cofactors for a truthful pair), so `value` bounds acceptance instead.
  bool non_exposing = false;
  std::string formula;
};

SoundnessBound soundness_bound(ProtocolId id, Strategy s, std::size_t n, std::uint64_t p);

struct AttackConfig {
  ProtocolId protocol = ProtocolId::fauv;
  Strategy strategy = Strategy::wrong_generator;
  std::size_t trials = 1000;
  std::size_t n = 10;
  std::uint64_t modulus = 1000003;
  std::uint64_t seed = 1;
  double density = 0.3;
};

struct AttackReport {
  AttackConfig config;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t bad_challenge = 0;
  double rate = 0;  // rejection rate, or acceptance rate when non-exposing
  SoundnessBound bound;
  double sigma = 0;
  bool pass = false;  // rate >= bound - 3 sigma; no Reject at all when non-exposing
};

// Throws UsageError for strategies that cannot cheat in the protocol and
// ConfigError when p is below the protocol's threshold.
AttackReport run_attack(const AttackConfig& cfg);

struct BenchConfig {
  ProtocolId protocol = ProtocolId::det_gamma;
  std::vector<std::size_t> sizes;
  std::uint64_t modulus = 1000003;
  std::uint64_t seed = 1;
  double density = 0.1;
  bool identity = false;
};

struct BenchRow {
  std::size_t n = 0;
  std::size_t nnz = 0;
  std::uint64_t mu = 0;
  std::string outcome;
  std::uint64_t verifier_ops = 0;
  std::optional<std::uint64_t> ops_budget;
  std::uint64_t elements = 0;
  std::optional<std::uint64_t> elements_budget;
  std::uint64_t random_elements = 0;
  std::uint64_t prover_matvecs = 0;
  std::string skipped;  // non-empty when the row could not run
  bool within_budget() const;
};

std::vector<BenchRow> run_bench(const BenchConfig& cfg);

struct SelftestConfig {
  std::size_t max_n = 12;
  std::size_t seeds = 50;
  std::uint64_t modulus = 1000003;
  std::uint64_t seed = 1;
};

struct SelftestReport {
  std::size_t sessions = 0;
  std::size_t accepts = 0;
  std::size_t bad_challenges = 0;
  std::size_t failures = 0;
  std::vector<std::string> notes;     // skips and tolerated events
  std::vector<std::string> problems;  // one line per failure
  bool pass() const { return failures == 0; }
};

SelftestReport run_selftest(const SelftestConfig& cfg);

}  // namespace certilin::harness
