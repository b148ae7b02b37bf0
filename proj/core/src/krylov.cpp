#include "certilin/krylov.hpp"

#include "certilin/dense.hpp"
#include "certilin/errors.hpp"

namespace certilin::krylov {

Vec wiedemann_sequence(const Field& F, const BlackBox& A, std::span<const Fp> u,
                       std::span<const Fp> v, std::size_t len) {
  if (len == 0) throw UsageError("sequence length must be positive");
  if (u.size() != A.dim() || v.size() != A.dim()) throw UsageError("projection dimension mismatch");
  Vec seq(len);
  Vec x(v.begin(), v.end());
  for (std::size_t i = 0; i < len; ++i) {
    seq[i] = F.dot(u, x);
    if (i + 1 < len) x = A.apply(F, x);
  }
  return seq;
}

Poly residue(const Field& F, const Poly& f, std::span<const Fp> seq) {
  if (f.is_zero()) throw UsageError("residue of the zero polynomial");
  const std::size_t d = f.size() - 1;
  if (seq.size() < d) throw UsageError("sequence too short for the residue");
  std::vector<Fp> rho(d);
  for (std::size_t j = 0; j < d; ++j) {
    Fp acc{};
    for (std::size_t k = j + 1; k <= d; ++k) acc = F.add(acc, F.mul(f.coeff(k), seq[k - 1 - j]));
    rho[j] = acc;
  }
  return Poly(std::move(rho));
}

WiedemannPair minimal_generator_pair(const Field& F, const BlackBox& A, std::span<const Fp> u,
                                     std::span<const Fp> v) {
  const Vec seq = wiedemann_sequence(F, A, u, v, 2 * A.dim());
  Poly f = poly::berlekamp_massey(F, seq);
  Poly rho = residue(F, f, seq);
  return {std::move(f), std::move(rho)};
}

Vec apply_poly(const Field& F, const BlackBox& A, const Poly& p, std::span<const Fp> v) {
  const std::size_t n = A.dim();
  if (v.size() != n) throw UsageError("vector dimension mismatch");
  if (p.is_zero()) return Vec(n);
  Vec y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = F.mul(p.leading(), v[i]);
  for (std::size_t k = p.size() - 1; k-- > 0;) {
    y = A.apply(F, y);
    const Fp c = p.coeff(k);
    if (c.is_zero()) continue;
    for (std::size_t i = 0; i < n; ++i) y[i] = F.add(y[i], F.mul(c, v[i]));
  }
  return y;
}

Vec solve_shifted(const Field& F, const BlackBox& A, Fp r1, std::span<const Fp> v, const Poly& f) {
  const std::size_t n = A.dim();
  if (v.size() != n) throw UsageError("vector dimension mismatch");
  if (f.is_zero()) throw UsageError("annihilator must be non-zero");
  const Fp f_r1 = poly::eval(F, f, r1);
  if (f_r1.is_zero()) throw BadShift();
  // Synthetic division: g = (f - f(r1)) / (x - r1).
  const std::size_t d = f.size() - 1;
  std::vector<Fp> g(d);
  if (d > 0) {
    g[d - 1] = f.coeff(d);
    for (std::size_t k = d - 1; k-- > 0;) g[k] = F.add(f.coeff(k + 1), F.mul(r1, g[k + 1]));
  }
  Vec w = apply_poly(F, A, Poly(std::move(g)), v);
  const Fp scale = F.inv(f_r1);
  for (auto& x : w) x = F.mul(x, scale);
  const Vec check = BlackBox::shift(r1, A).apply(F, w);
  if (check != Vec(v.begin(), v.end())) {
    throw IntegrityError("shifted solve residual is non-zero: f does not annihilate v");
  }
  return w;
}

std::optional<Vec> kernel_vector(const Field& F, const BlackBox& A) {
  dense::require_within_cap(A.dim());
  return dense::kernel_vector(F, DenseMatrix::materialize(F, A));
}

}  // namespace certilin::krylov
