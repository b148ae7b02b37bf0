#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "certilin/blackbox.hpp"
#include "certilin/errors.hpp"
#include "certilin/field.hpp"
#include "certilin/polynomial.hpp"

namespace certilin {

// Minimal generator f of (u^T A^i v) with its residue rho. f is monic,
// deg(rho) < deg(f) and gcd(f, rho) = 1.
struct WiedemannPair {
  Poly f;
  Poly rho;
};

namespace krylov {

// (u^T A^i v) for i < len: len - 1 matvecs, len dot products.
Vec wiedemann_sequence(const Field& F, const BlackBox& A, std::span<const Fp> u,
                       std::span<const Fp> v, std::size_t len);

// Polynomial part of f * sum_i a_i x^{-1-i}: rho_j = sum_{k>j} f_k a_{k-1-j}.
Poly residue(const Field& F, const Poly& f, std::span<const Fp> seq);

// Berlekamp-Massey over 2n terms, plus the residue.
WiedemannPair minimal_generator_pair(const Field& F, const BlackBox& A, std::span<const Fp> u,
                                     std::span<const Fp> v);

// w with (r1 I - A) w = v, via w = g(A) v / f(r1), g = (f - f(r1)) / (x - r1).
// f must annihilate the Krylov vectors of v. Throws BadShift when f(r1) = 0
// and IntegrityError when the residual check fails.
Vec solve_shifted(const Field& F, const BlackBox& A, Fp r1, std::span<const Fp> v, const Poly& f);

// p(A) v by Horner: deg(p) matvecs.
Vec apply_poly(const Field& F, const BlackBox& A, const Poly& p, std::span<const Fp> v);

// Non-zero w with A w = 0, or nullopt when A is nonsingular. Dense oracle,
// subject to the oracle cap.
std::optional<Vec> kernel_vector(const Field& F, const BlackBox& A);

}  // namespace krylov

class BadShift : public DomainError {
 public:
  BadShift() : DomainError("bad shift: f(r1) = 0") {}
};

}  // namespace certilin
