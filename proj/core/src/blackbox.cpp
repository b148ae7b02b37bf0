#include "certilin/blackbox.hpp"

#include <algorithm>

#include "certilin/errors.hpp"
#include "certilin/sms.hpp"

namespace certilin {

SparseMatrix::SparseMatrix(const Field& F, std::size_t n, std::vector<SparseEntry> entries)
    : n_(n) {
  const Field plain = F.unmetered();
  for (const auto& e : entries) {
    if (e.row >= n || e.col >= n) {
      throw UsageError("entry (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                       ") outside a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    }
    if (!plain.contains(e.value)) throw UsageError("matrix entry not reduced modulo p");
  }
  std::stable_sort(entries.begin(), entries.end(), [](const SparseEntry& a, const SparseEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (const auto& e : entries) {
    if (!entries_.empty() && entries_.back().row == e.row && entries_.back().col == e.col) {
      entries_.back().value = plain.add(entries_.back().value, e.value);
    } else {
      entries_.push_back(e);
    }
  }
  std::erase_if(entries_, [](const SparseEntry& e) { return e.value.is_zero(); });
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.entries_.push_back({i, i, Fp{1}});
  return m;
}

Fp gamma_det(const Field& F, const GammaMatrix& G) {
  if (G.n == 0) throw UsageError("Gamma of dimension zero");
  return F.add(F.pow(G.t, G.n), G.s);
}

BlackBox::BlackBox(SparseMatrix m) : dim_(m.dim()) {
  node_ = std::make_shared<const Node>(std::move(m));
}

BlackBox BlackBox::diagonal(Vec d) {
  const std::size_t n = d.size();
  return BlackBox(std::make_shared<const Node>(Diagonal{std::move(d)}), n);
}

BlackBox BlackBox::gamma(GammaMatrix g) {
  if (g.n == 0) throw UsageError("Gamma of dimension zero");
  const std::size_t n = g.n;
  return BlackBox(std::make_shared<const Node>(g), n);
}

BlackBox BlackBox::product(BlackBox left, BlackBox right) {
  if (left.dim() != right.dim()) {
    throw UsageError("product of operators with dimensions " + std::to_string(left.dim()) +
                     " and " + std::to_string(right.dim()));
  }
  const std::size_t n = left.dim();
  return BlackBox(std::make_shared<const Node>(Product{std::move(left), std::move(right)}), n);
}

BlackBox BlackBox::shift(Fp r, BlackBox inner) {
  const std::size_t n = inner.dim();
  return BlackBox(std::make_shared<const Node>(Shift{r, std::move(inner)}), n);
}

Vec BlackBox::apply(const Field& F, std::span<const Fp> x) const {
  if (x.size() != dim_) {
    throw UsageError("matvec with a vector of length " + std::to_string(x.size()) +
                     " on a dimension " + std::to_string(dim_) + " operator");
  }
  if (auto* m = F.meter()) ++m->matvec;
  Vec y(dim_);
  apply_into(F, x, y);
  return y;
}

void BlackBox::apply_into(const Field& F, std::span<const Fp> x, std::span<Fp> y) const {
  const std::size_t n = dim_;
  std::visit(
      [&](const auto& op) {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, SparseMatrix>) {
          std::fill(y.begin(), y.end(), Fp{});
          for (const auto& e : op.entries()) y[e.row] = F.add(y[e.row], F.mul(e.value, x[e.col]));
        } else if constexpr (std::is_same_v<T, Diagonal>) {
          for (std::size_t i = 0; i < n; ++i) y[i] = F.mul(op.d[i], x[i]);
        } else if constexpr (std::is_same_v<T, GammaMatrix>) {
          for (std::size_t i = 0; i + 1 < n; ++i) y[i] = F.sub(F.mul(op.t, x[i]), x[i + 1]);
          y[n - 1] = F.add(F.mul(op.s, x[0]), F.mul(op.t, x[n - 1]));
        } else if constexpr (std::is_same_v<T, Product>) {
          Vec tmp(n);
          op.right.apply_into(F, x, tmp);
          op.left.apply_into(F, tmp, y);
        } else {
          Vec tmp(n);
          op.inner.apply_into(F, x, tmp);
          for (std::size_t i = 0; i < n; ++i) y[i] = F.sub(F.mul(op.r, x[i]), tmp[i]);
        }
      },
      *node_);
}

std::uint64_t BlackBox::matvec_cost() const {
  const std::uint64_t n = dim_;
  return std::visit(
      [&](const auto& op) -> std::uint64_t {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, SparseMatrix>) {
          return 2 * op.nnz();
        } else if constexpr (std::is_same_v<T, Diagonal>) {
          return n;
        } else if constexpr (std::is_same_v<T, GammaMatrix>) {
          return 2 * n + 1;
        } else if constexpr (std::is_same_v<T, Product>) {
          return op.left.matvec_cost() + op.right.matvec_cost();
        } else {
          return op.inner.matvec_cost() + 2 * n;
        }
      },
      *node_);
}

std::string BlackBox::describe(const Field& F) const {
  return std::visit(
      [&](const auto& op) -> std::string {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, SparseMatrix>) {
          return emit_sms(F, op);
        } else if constexpr (std::is_same_v<T, Diagonal>) {
          std::string s = "diagonal";
          for (Fp d : op.d) s += " " + Field::to_text(d);
          return s + "\n";
        } else if constexpr (std::is_same_v<T, GammaMatrix>) {
          return "gamma " + std::to_string(op.n) + " s=" + Field::to_text(op.s) +
                 " t=" + Field::to_text(op.t) + "\n";
        } else if constexpr (std::is_same_v<T, Product>) {
          return "product {\n" + op.left.describe(F) + "} {\n" + op.right.describe(F) + "}\n";
        } else {
          return "shift " + Field::to_text(op.r) + " {\n" + op.inner.describe(F) + "}\n";
        }
      },
      *node_);
}

}  // namespace certilin
