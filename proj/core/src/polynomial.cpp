#include "certilin/polynomial.hpp"

#include <algorithm>

#include "certilin/errors.hpp"

namespace certilin {

std::size_t Degree::value() const {
  if (!finite_) throw DomainError("degree of the zero polynomial is -infinity");
  return value_;
}

std::string to_string(Degree d) {
  return d.is_neg_infinity() ? std::string("-inf") : std::to_string(d.value());
}

Poly::Poly(std::vector<Fp> coeffs) : c_(std::move(coeffs)) { normalize(); }

void Poly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::monomial(Fp c, std::size_t k) {
  std::vector<Fp> v(k + 1);
  v[k] = c;
  return Poly(std::move(v));
}

Poly Poly::linear_root(const Field& F, Fp root) {
  return Poly(std::vector<Fp>{F.unmetered().neg(root), F.one()});
}

namespace poly {

Poly add(const Field& F, const Poly& a, const Poly& b) {
  std::vector<Fp> out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < a.size() && i < b.size()) {
      out[i] = F.add(a.coeff(i), b.coeff(i));
    } else {
      out[i] = i < a.size() ? a.coeff(i) : b.coeff(i);
    }
  }
  return Poly(std::move(out));
}

Poly sub(const Field& F, const Poly& a, const Poly& b) {
  std::vector<Fp> out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < b.size()) {
      out[i] = F.sub(a.coeff(i), b.coeff(i));
    } else {
      out[i] = a.coeff(i);
    }
  }
  return Poly(std::move(out));
}

Poly mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Fp> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.coeff(i).is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = F.add(out[i + j], F.mul(a.coeff(i), b.coeff(j)));
    }
  }
  return Poly(std::move(out));
}

Poly scale(const Field& F, const Poly& a, Fp c) {
  std::vector<Fp> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = F.mul(a.coeff(i), c);
  return Poly(std::move(out));
}

std::pair<Poly, Poly> divrem(const Field& F, const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  if (a.size() < b.size()) return {Poly(), a};
  std::vector<Fp> r(a.coeffs().begin(), a.coeffs().end());
  std::vector<Fp> q(a.size() - b.size() + 1);
  const std::size_t db = b.size() - 1;
  const Fp lead_inv = b.is_monic() ? F.one() : F.inv(b.leading());
  for (std::size_t k = q.size(); k-- > 0;) {
    const Fp c = b.is_monic() ? r[k + db] : F.mul(r[k + db], lead_inv);
    q[k] = c;
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j <= db; ++j) {
      r[k + j] = F.sub(r[k + j], F.mul(c, b.coeff(j)));
    }
  }
  r.resize(db);
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly rem(const Field& F, const Poly& a, const Poly& b) { return divrem(F, a, b).second; }

Poly monic(const Field& F, const Poly& a) {
  if (a.is_zero() || a.is_monic()) return a;
  return scale(F, a, F.inv(a.leading()));
}

Fp eval(const Field& F, const Poly& f, Fp x) {
  if (f.is_zero()) return F.zero();
  Fp acc = f.leading();
  for (std::size_t i = f.size() - 1; i-- > 0;) acc = F.add(F.mul(acc, x), f.coeff(i));
  return acc;
}

Bezout xgcd(const Field& F, const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("gcd of two zero polynomials");
  // Invariants: r0 = s0*a + t0*b, r1 = s1*a + t1*b.
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(F.one()), s1;
  Poly t0, t1 = Poly::constant(F.one());
  while (!r1.is_zero()) {
    auto [q, r] = divrem(F, r0, r1);
    Poly s2 = sub(F, s0, mul(F, q, s1));
    Poly t2 = sub(F, t0, mul(F, q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const Fp lc_inv = F.inv(r0.leading());
  Bezout out{scale(F, r0, lc_inv), scale(F, s0, lc_inv), scale(F, t0, lc_inv)};
  if (!b.is_zero()) {
    // Fold phi's excess over b/g into psi: (phi - q b/g) a + (psi + q a/g) b = g.
    const Poly b_red = divrem(F, b, out.gcd).first;
    const Poly a_red = divrem(F, a, out.gcd).first;
    auto [q, r] = divrem(F, out.phi, b_red);
    if (!q.is_zero()) {
      out.phi = std::move(r);
      out.psi = add(F, out.psi, mul(F, q, a_red));
    }
  }
  return out;
}

Poly gcd(const Field& F, const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("gcd of two zero polynomials");
  Poly r0 = a, r1 = b;
  while (!r1.is_zero()) {
    Poly r = rem(F, r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
  }
  return monic(F, r0);
}

Poly lcm(const Field& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  const Poly g = gcd(F, a, b);
  return monic(F, mul(F, divrem(F, a, g).first, b));
}

Poly berlekamp_massey(const Field& F, std::span<const Fp> seq) {
  if (seq.empty()) throw UsageError("berlekamp_massey needs a non-empty sequence");
  // Connection polynomial C(x) = 1 + c_1 x + ... + c_L x^L.
  std::vector<Fp> C{F.one()}, B{F.one()};
  std::size_t L = 0, m = 1;
  Fp b = F.one();
  for (std::size_t k = 0; k < seq.size(); ++k) {
    Fp d = seq[k];
    for (std::size_t i = 1; i <= L && i < C.size(); ++i) d = F.add(d, F.mul(C[i], seq[k - i]));
    if (d.is_zero()) {
      ++m;
      continue;
    }
    const Fp coef = F.mul(d, F.inv(b));
    std::vector<Fp> T = C;
    if (C.size() < B.size() + m) C.resize(B.size() + m);
    for (std::size_t i = 0; i < B.size(); ++i) C[i + m] = F.sub(C[i + m], F.mul(coef, B[i]));
    if (2 * L <= k) {
      L = k + 1 - L;
      B = std::move(T);
      b = d;
      m = 1;
    } else {
      ++m;
    }
  }
  // Generator f(x) = x^L C(1/x).
  std::vector<Fp> f(L + 1);
  for (std::size_t i = 0; i <= L; ++i) f[L - i] = i < C.size() ? C[i] : Fp{};
  return Poly(std::move(f));
}

bool is_coprime_certified(const Field& F, const Poly& f, const Poly& h, const Poly& phi,
                          const Poly& psi, Fp r0) {
  const Fp lhs = F.add(F.mul(eval(F, phi, r0), eval(F, f, r0)),
                       F.mul(eval(F, psi, r0), eval(F, h, r0)));
  return lhs == F.one();
}

std::string to_text(const Poly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) out += ',';
    out += Field::to_text(f.coeff(i));
  }
  return out;
}

Poly parse_text(const Field& F, std::string_view text) {
  if (text == "0") return Poly();
  std::vector<Fp> c;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string_view tok =
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    c.push_back(F.parse_text(tok));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (c.back().is_zero()) {
    throw UsageError("polynomial text has a zero leading coefficient: '" + std::string(text) + "'");
  }
  return Poly(std::move(c));
}

}  // namespace poly
}  // namespace certilin
