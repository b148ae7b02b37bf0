#include "certilin/dense.hpp"

#include <cstdlib>
#include <string>

#include "certilin/errors.hpp"

namespace certilin {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Fp{1};
  return m;
}

DenseMatrix DenseMatrix::from_sparse(const SparseMatrix& m) {
  DenseMatrix d(m.dim(), m.dim());
  for (const auto& e : m.entries()) d.at(e.row, e.col) = e.value;
  return d;
}

DenseMatrix DenseMatrix::materialize(const Field& F, const BlackBox& M) {
  const Field plain = F.unmetered();
  const std::size_t n = M.dim();
  DenseMatrix d(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const Vec col = M.apply(plain, unit_vector(n, j));
    for (std::size_t i = 0; i < n; ++i) d.at(i, j) = col[i];
  }
  return d;
}

DenseMatrix DenseMatrix::leading_block(std::size_t k) const {
  DenseMatrix b(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) b.at(i, j) = at(i, j);
  }
  return b;
}

Vec DenseMatrix::apply(const Field& F, std::span<const Fp> x) const {
  if (x.size() != cols_) throw UsageError("dense matvec dimension mismatch");
  Vec y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Fp acc{};
    for (std::size_t j = 0; j < cols_; ++j) acc = F.add(acc, F.mul(at(i, j), x[j]));
    y[i] = acc;
  }
  return y;
}

DenseMatrix multiply(const Field& F, const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw UsageError("dense product dimension mismatch");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Fp aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c.at(i, j) = F.add(c.at(i, j), F.mul(aik, b.at(k, j)));
    }
  }
  return c;
}

namespace dense {
namespace {

void require_square(const DenseMatrix& A) {
  if (A.rows() != A.cols()) throw UsageError("square matrix required");
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(const Field& F, DenseMatrix& M) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < M.cols() && row < M.rows(); ++col) {
    std::size_t piv = row;
    while (piv < M.rows() && M.at(piv, col).is_zero()) ++piv;
    if (piv == M.rows()) continue;
    if (piv != row) {
      for (std::size_t j = 0; j < M.cols(); ++j) std::swap(M.at(piv, j), M.at(row, j));
    }
    const Fp inv = F.inv(M.at(row, col));
    for (std::size_t j = 0; j < M.cols(); ++j) M.at(row, j) = F.mul(M.at(row, j), inv);
    for (std::size_t i = 0; i < M.rows(); ++i) {
      if (i == row || M.at(i, col).is_zero()) continue;
      const Fp f = M.at(i, col);
      for (std::size_t j = 0; j < M.cols(); ++j) M.at(i, j) = F.sub(M.at(i, j), F.mul(f, M.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t oracle_cap() {
  if (const char* env = std::getenv("CERTILIN_ORACLE_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultOracleCap;
}

void require_within_cap(std::size_t n) {
  const std::size_t cap = oracle_cap();
  if (n > cap) {
    throw UsageError("dimension " + std::to_string(n) + " exceeds the dense oracle cap " +
                     std::to_string(cap) + " (set CERTILIN_ORACLE_CAP to raise it)");
  }
}

Fp det(const Field& F, const DenseMatrix& A) {
  require_square(A);
  require_within_cap(A.rows());
  DenseMatrix M = A;
  const std::size_t n = M.rows();
  Fp d = F.one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && M.at(piv, col).is_zero()) ++piv;
    if (piv == n) return F.zero();
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(M.at(piv, j), M.at(col, j));
      d = F.neg(d);
    }
    d = F.mul(d, M.at(col, col));
    const Fp inv = F.inv(M.at(col, col));
    for (std::size_t i = col + 1; i < n; ++i) {
      if (M.at(i, col).is_zero()) continue;
      const Fp f = F.mul(M.at(i, col), inv);
      for (std::size_t j = col; j < n; ++j) M.at(i, j) = F.sub(M.at(i, j), F.mul(f, M.at(col, j)));
    }
  }
  return d;
}

Poly charpoly(const Field& F, const DenseMatrix& A) {
  require_square(A);
  const std::size_t n = A.rows();
  require_within_cap(n);
  if (F.modulus() <= n) throw ConfigError("charpoly interpolation needs p > n", n + 1);
  // Values det(x_k I - A) at x_k = 0..n, then Newton interpolation.
  std::vector<Fp> xs(n + 1), ys(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    xs[k] = F.from_u64(k);
    DenseMatrix M(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) M.at(i, j) = F.neg(A.at(i, j));
      M.at(i, i) = F.add(M.at(i, i), xs[k]);
    }
    ys[k] = det(F, M);
  }
  std::vector<Fp> dd = ys;  // divided differences
  for (std::size_t level = 1; level <= n; ++level) {
    for (std::size_t k = n; k >= level; --k) {
      dd[k] = F.mul(F.sub(dd[k], dd[k - 1]), F.inv(F.sub(xs[k], xs[k - level])));
    }
  }
  Poly result = Poly::constant(dd[n]);
  for (std::size_t k = n; k-- > 0;) {
    result = poly::add(F, poly::mul(F, result, Poly::linear_root(F, xs[k])), Poly::constant(dd[k]));
  }
  return result;
}

Poly minpoly(const Field& F, const DenseMatrix& A) {
  require_square(A);
  const std::size_t n = A.rows();
  require_within_cap(n);
  const std::size_t len = n * n;
  // Incremental elimination: basis rows in echelon form, each remembering
  // which combination of powers produced it.
  struct Row {
    std::vector<Fp> v;
    std::vector<Fp> combo;
    std::size_t pivot;
  };
  std::vector<Row> basis;
  DenseMatrix power = DenseMatrix::identity(n);
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<Fp> v(len);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) v[i * n + j] = power.at(i, j);
    }
    std::vector<Fp> combo(n + 1);
    combo[k] = F.one();
    for (const auto& row : basis) {
      const Fp f = v[row.pivot];
      if (f.is_zero()) continue;
      for (std::size_t t = 0; t < len; ++t) v[t] = F.sub(v[t], F.mul(f, row.v[t]));
      for (std::size_t t = 0; t <= n; ++t) combo[t] = F.sub(combo[t], F.mul(f, row.combo[t]));
    }
    std::size_t pivot = 0;
    while (pivot < len && v[pivot].is_zero()) ++pivot;
    if (pivot == len) return poly::monic(F, Poly(combo));
    const Fp inv = F.inv(v[pivot]);
    for (auto& x : v) x = F.mul(x, inv);
    for (auto& x : combo) x = F.mul(x, inv);
    basis.push_back({std::move(v), std::move(combo), pivot});
    power = multiply(F, power, A);
  }
  throw InternalError("no dependency among n+1 matrix powers");
}

SolveResult solve(const Field& F, const DenseMatrix& A, std::span<const Fp> b) {
  require_square(A);
  const std::size_t n = A.rows();
  require_within_cap(n);
  if (b.size() != n) throw UsageError("right-hand side length mismatch");
  DenseMatrix M(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) M.at(i, j) = A.at(i, j);
    M.at(i, n) = b[i];
  }
  const auto pivots = rref(F, M);
  SolveResult out;
  const bool inconsistent = !pivots.empty() && pivots.back() == n;
  std::vector<bool> is_pivot(n + 1, false);
  for (auto c : pivots) is_pivot[c] = true;
  if (!inconsistent) {
    Vec x(n);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = M.at(r, n);
    out.solution = std::move(x);
  }
  std::size_t free_col = n;
  for (std::size_t c = 0; c < n; ++c) {
    if (!is_pivot[c]) {
      free_col = c;
      break;
    }
  }
  if (free_col < n) {
    Vec k(n);
    k[free_col] = F.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      if (pivots[r] < n) k[pivots[r]] = F.neg(M.at(r, free_col));
    }
    out.kernel = std::move(k);
  }
  return out;
}

std::optional<Vec> kernel_vector(const Field& F, const DenseMatrix& A) {
  return solve(F, A, Vec(A.rows())).kernel;
}

}  // namespace dense
}  // namespace certilin
