#pragma once

#include <cstdint>
#include <random>

namespace certilin {

// Deterministic 64-bit generator. Everything random in the library is drawn
// through one of these so that a seed fully determines a run.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, bound), bound > 0, by rejection.
  std::uint64_t uniform_below(std::uint64_t bound);

  // True with probability `probability` (clamped to [0, 1]).
  bool bernoulli(double probability);

  // Child generator for an independent sub-stream (e.g. trial i of a harness).
  SeededRng fork(std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
};

}  // namespace certilin
