#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "certilin/blackbox.hpp"
#include "certilin/field.hpp"
#include "certilin/polynomial.hpp"

namespace certilin {

// Row-major dense matrix; ground truth for tests and the desk-scale Prover.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix from_sparse(const SparseMatrix& m);
  // n matvecs against the unit vectors; unmetered.
  static DenseMatrix materialize(const Field& F, const BlackBox& M);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Fp& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  Fp at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  DenseMatrix leading_block(std::size_t k) const;
  Vec apply(const Field& F, std::span<const Fp> x) const;

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Fp> a_;
};

DenseMatrix multiply(const Field& F, const DenseMatrix& a, const DenseMatrix& b);

namespace dense {

inline constexpr std::size_t kDefaultOracleCap = 64;

// CERTILIN_ORACLE_CAP overrides the default when set to a positive integer.
std::size_t oracle_cap();
void require_within_cap(std::size_t n);

Fp det(const Field& F, const DenseMatrix& A);
// det(xI - A) evaluated at n+1 points and interpolated.
Poly charpoly(const Field& F, const DenseMatrix& A);
// First linear dependency among I, A, A^2, ... (as vectors of length n^2).
Poly minpoly(const Field& F, const DenseMatrix& A);

struct SolveResult {
  std::optional<Vec> solution;  // absent iff A x = b is inconsistent
  std::optional<Vec> kernel;    // non-zero kernel vector iff det(A) = 0
};
SolveResult solve(const Field& F, const DenseMatrix& A, std::span<const Fp> b);
std::optional<Vec> kernel_vector(const Field& F, const DenseMatrix& A);

}  // namespace dense
}  // namespace certilin
