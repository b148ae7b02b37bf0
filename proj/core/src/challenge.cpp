#include "certilin/challenge.hpp"

#include <limits>
#include <string>

#include "certilin/errors.hpp"
#include "certilin/hash.hpp"

namespace certilin {

Fp RandomChallenges::draw(const Field& F, const Transcript&) { return F.unmetered().sample(rng_); }

Fp HashChallenges::draw(const Field& F, const Transcript& so_far) {
  const std::uint64_t p = F.modulus();
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t top = max - (max % p + 1) % p;  // 2^64 - (2^64 mod p) - 1
  const std::string prefix = so_far.prefix_text() + "challenge " + std::to_string(index_) + " ";
  for (std::uint64_t attempt = 0;; ++attempt) {
    const Digest d = sha256(prefix + std::to_string(attempt) + "\n");
    for (std::size_t chunk = 0; chunk < 4; ++chunk) {
      std::uint64_t x = 0;
      for (std::size_t b = 0; b < 8; ++b) x |= std::uint64_t{d[chunk * 8 + b]} << (8 * b);
      if (x <= top) {
        ++index_;
        drawn_.push_back(Fp{x % p});
        return drawn_.back();
      }
    }
  }
}

Fp ScriptedChallenges::draw(const Field& F, const Transcript&) {
  if (next_ >= values_.size()) throw UsageError("scripted challenges exhausted");
  const Fp r = values_[next_++];
  if (!F.contains(r)) throw UsageError("scripted challenge outside the field");
  return r;
}

}  // namespace certilin
