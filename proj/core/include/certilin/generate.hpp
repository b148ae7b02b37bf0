#pragma once

#include <cstddef>

#include "certilin/blackbox.hpp"
#include "certilin/field.hpp"
#include "certilin/rng.hpp"

namespace certilin {

// Each entry is present with probability `density` and then uniform non-zero.
SparseMatrix random_sparse(const Field& F, std::size_t n, double density, SeededRng& rng);

}  // namespace certilin
