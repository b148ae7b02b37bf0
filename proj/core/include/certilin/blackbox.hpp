#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "certilin/field.hpp"

namespace certilin {

struct SparseEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  Fp value;

  bool operator==(const SparseEntry&) const = default;
};

/// Square COO matrix. Construction sorts entries row-major, sums duplicate
/// coordinates and drops zeros, so equal matrices have equal entry lists.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(const Field& F, std::size_t n, std::vector<SparseEntry> entries);

  static SparseMatrix identity(std::size_t n);
  static SparseMatrix zero(std::size_t n) { return SparseMatrix(n); }

  std::size_t dim() const { return n_; }
  std::size_t nnz() const { return entries_.size(); }
  std::span<const SparseEntry> entries() const { return entries_; }

  bool operator==(const SparseMatrix&) const = default;

 private:
  explicit SparseMatrix(std::size_t n) : n_(n) {}
  std::size_t n_ = 0;
  std::vector<SparseEntry> entries_;
};

// Gamma(s, t): t on the diagonal, -1 on the superdiagonal, s in the
// bottom-left corner. det = t^n + s.
struct GammaMatrix {
  std::size_t n = 0;
  Fp s;
  Fp t;
};

// t^n + s by square-and-multiply.
Fp gamma_det(const Field& F, const GammaMatrix& G);

/// Immutable n x n linear operator reachable only through matvec.
///
/// Compositions hold their operands by shared pointer and are applied in
/// sequence; a product is never materialized.
class BlackBox {
 public:
  struct Diagonal {
    Vec d;
  };
  struct Product;
  struct Shift;
  struct Node;

  BlackBox(SparseMatrix m);  // NOLINT(google-explicit-constructor)
  static BlackBox diagonal(Vec d);
  static BlackBox gamma(GammaMatrix g);
  static BlackBox product(BlackBox left, BlackBox right);
  static BlackBox shift(Fp r, BlackBox inner);

  std::size_t dim() const { return dim_; }
  const Node& node() const { return *node_; }

  // y = M x. Charges per-variant costs to F's meter and counts one matvec
  // for this outermost call.
  Vec apply(const Field& F, std::span<const Fp> x) const;

  // Field operations one apply() charges, i.e. mu(M) under this library's
  // accounting: sparse 2*nnz, diagonal n, Gamma 2n+1, product sum, shift +2n.
  std::uint64_t matvec_cost() const;

  // Canonical structural description; for a plain sparse matrix this is the
  // SMS text, so its digest matches the digest of the matrix file.
  std::string describe(const Field& F) const;

 private:
  BlackBox(std::shared_ptr<const Node> node, std::size_t dim)
      : node_(std::move(node)), dim_(dim) {}
  void apply_into(const Field& F, std::span<const Fp> x, std::span<Fp> y) const;

  std::shared_ptr<const Node> node_;
  std::size_t dim_ = 0;
};

struct BlackBox::Product {
  BlackBox left;
  BlackBox right;
};

struct BlackBox::Shift {  // r*I - inner
  Fp r;
  BlackBox inner;
};

struct BlackBox::Node : std::variant<SparseMatrix, Diagonal, GammaMatrix, Product, Shift> {
  using variant::variant;
};

}  // namespace certilin
