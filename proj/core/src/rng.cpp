#include "certilin/rng.hpp"

#include <cmath>
#include <limits>

namespace certilin {

std::uint64_t SeededRng::uniform_below(std::uint64_t bound) {
  // Largest multiple of bound that fits; values above it are rejected.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

bool SeededRng::bernoulli(double probability) {
  if (probability <= 0.0) return false;
  if (probability >= 1.0) return true;
  // 53 random bits -> [0, 1).
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return u < probability;
}

SeededRng SeededRng::fork(std::uint64_t stream) {
  // SplitMix64 finaliser decorrelates neighbouring stream ids.
  std::uint64_t z = engine_() ^ (stream + 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return SeededRng(z);
}

}  // namespace certilin
