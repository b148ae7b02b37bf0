#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "certilin/field.hpp"

namespace certilin {

// Degree of a polynomial; the zero polynomial has degree -infinity, which
// compares below every finite degree.
class Degree {
 public:
  static constexpr Degree neg_infinity() { return Degree(); }
  constexpr explicit Degree(std::size_t d) : finite_(true), value_(d) {}

  constexpr bool is_neg_infinity() const { return !finite_; }
  std::size_t value() const;

  constexpr std::strong_ordering operator<=>(const Degree& o) const {
    if (finite_ != o.finite_) return finite_ ? std::strong_ordering::greater : std::strong_ordering::less;
    return value_ <=> o.value_;
  }
  constexpr bool operator==(const Degree& o) const = default;
  constexpr std::strong_ordering operator<=>(std::size_t d) const { return *this <=> Degree(d); }
  constexpr bool operator==(std::size_t d) const { return *this == Degree(d); }

 private:
  constexpr Degree() = default;
  bool finite_ = false;
  std::size_t value_ = 0;
};

std::string to_string(Degree d);

/// Dense univariate polynomial over Z_p, coefficients low-to-high with no
/// trailing zeros. The zero polynomial stores no coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Fp> coeffs);

  static Poly constant(Fp c) { return Poly(std::vector<Fp>{c}); }
  static Poly monomial(Fp c, std::size_t k);
  // x - root
  static Poly linear_root(const Field& F, Fp root);

  bool is_zero() const { return c_.empty(); }
  Degree degree() const { return c_.empty() ? Degree::neg_infinity() : Degree(c_.size() - 1); }
  std::size_t size() const { return c_.size(); }
  // Coefficient of x^i (zero past the end).
  Fp coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Fp{}; }
  Fp leading() const { return c_.empty() ? Fp{} : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == Fp{1}; }
  std::span<const Fp> coeffs() const { return c_; }

  bool operator==(const Poly&) const = default;

 private:
  void normalize();
  std::vector<Fp> c_;
};

namespace poly {

Poly add(const Field& F, const Poly& a, const Poly& b);
Poly sub(const Field& F, const Poly& a, const Poly& b);
Poly mul(const Field& F, const Poly& a, const Poly& b);
Poly scale(const Field& F, const Poly& a, Fp c);
// (q, r) with a = q*b + r and deg r < deg b. DomainError if b is zero.
std::pair<Poly, Poly> divrem(const Field& F, const Poly& a, const Poly& b);
Poly rem(const Field& F, const Poly& a, const Poly& b);
Poly monic(const Field& F, const Poly& a);

// Horner: deg(f) multiplications and deg(f) additions.
Fp eval(const Field& F, const Poly& f, Fp x);

struct Bezout {
  Poly gcd;  // monic
  Poly phi;  // cofactor of a
  Poly psi;  // cofactor of b
};

// g = phi*a + psi*b with g = monic gcd. The cofactors are reduced so that
// deg(phi) < deg(b/g) (and then deg(psi) < deg(a/g) follows).
Bezout xgcd(const Field& F, const Poly& a, const Poly& b);
Poly gcd(const Field& F, const Poly& a, const Poly& b);
Poly lcm(const Field& F, const Poly& a, const Poly& b);

// Minimal monic linear generator of a finite sequence.
Poly berlekamp_massey(const Field& F, std::span<const Fp> seq);

// phi(r0)*f(r0) + psi(r0)*h(r0) == 1, the O(deg) coprimality spot check.
bool is_coprime_certified(const Field& F, const Poly& f, const Poly& h, const Poly& phi,
                          const Poly& psi, Fp r0);

// Canonical text: comma-separated decimal coefficients, low to high; "0" for
// the zero polynomial.
std::string to_text(const Poly& f);
Poly parse_text(const Field& F, std::string_view text);

}  // namespace poly
}  // namespace certilin
