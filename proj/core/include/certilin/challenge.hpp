#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "certilin/field.hpp"
#include "certilin/rng.hpp"
#include "certilin/transcript.hpp"

namespace certilin {

// Where the Verifier's random elements come from. The Verifier charges
// the draw to its own meter; sources never touch a meter.
class ChallengeSource {
 public:
  virtual ~ChallengeSource() = default;
  virtual Fp draw(const Field& F, const Transcript& so_far) = 0;
};

class RandomChallenges : public ChallengeSource {
 public:
  explicit RandomChallenges(std::uint64_t seed) : rng_(seed) {}
  Fp draw(const Field& F, const Transcript& so_far) override;

 private:
  SeededRng rng_;
};

// Fiat-Shamir: SHA-256 over the transcript prefix, a draw counter and a
// retry counter; 64-bit little-endian chunks, rejection-sampled below the
// largest multiple of p.
class HashChallenges : public ChallengeSource {
 public:
  Fp draw(const Field& F, const Transcript& so_far) override;
  const Vec& drawn() const { return drawn_; }

 private:
  std::uint64_t index_ = 0;
  Vec drawn_;
};

// Replays a fixed list; throws UsageError when exhausted.
class ScriptedChallenges : public ChallengeSource {
 public:
  explicit ScriptedChallenges(Vec values) : values_(std::move(values)) {}
  Fp draw(const Field& F, const Transcript& so_far) override;

 private:
  Vec values_;
  std::size_t next_ = 0;
};

}  // namespace certilin
