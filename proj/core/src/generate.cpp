#include "certilin/generate.hpp"

#include <vector>

#include "certilin/errors.hpp"

namespace certilin {

SparseMatrix random_sparse(const Field& F, std::size_t n, double density, SeededRng& rng) {
  if (!(density > 0.0 && density <= 1.0)) throw UsageError("density must lie in (0, 1]");
  const Field U = F.unmetered();
  std::vector<SparseEntry> entries;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (rng.bernoulli(density)) entries.push_back({i, j, U.sample_nonzero(rng)});
    }
  }
  return SparseMatrix(F, n, std::move(entries));
}

}  // namespace certilin
