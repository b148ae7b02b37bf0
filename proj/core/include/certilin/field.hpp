#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "certilin/cost_meter.hpp"
#include "certilin/rng.hpp"

namespace certilin {

// Canonical residue in [0, p). Carries no modulus; the owning Field validates it.
struct Fp {
  std::uint64_t v = 0;

  constexpr Fp() = default;
  constexpr explicit Fp(std::uint64_t value) : v(value) {}

  constexpr bool is_zero() const { return v == 0; }
  constexpr auto operator<=>(const Fp&) const = default;
};

using Vec = std::vector<Fp>;

bool is_prime_u64(std::uint64_t n);

/// Prime field Z_p for an odd prime 3 <= p < 2^62.
///
/// A Field is a small value (modulus plus an optional meter pointer). Copies
/// made with `metered()` charge every arithmetic call to the given CostMeter,
/// which is how Prover and Verifier costs are kept apart within one session.
class Field {
 public:
  static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

  explicit Field(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }

  Field metered(CostMeter* meter) const {
    Field f = *this;
    f.meter_ = meter;
    return f;
  }
  Field unmetered() const { return metered(nullptr); }
  CostMeter* meter() const { return meter_; }

  Fp zero() const { return Fp{0}; }
  Fp one() const { return Fp{1}; }
  Fp from_u64(std::uint64_t x) const { return Fp{x % p_}; }
  Fp from_i64(std::int64_t x) const;
  bool contains(Fp a) const { return a.v < p_; }

  Fp add(Fp a, Fp b) const;
  Fp sub(Fp a, Fp b) const;
  Fp mul(Fp a, Fp b) const;
  Fp neg(Fp a) const;  // charged as one addition
  Fp inv(Fp a) const;  // DomainError on zero
  Fp pow(Fp a, std::uint64_t e) const;

  // Uniform over [0, p); one draw on the meter.
  Fp sample(SeededRng& rng) const;
  // Uniform over [1, p); one draw on the meter.
  Fp sample_nonzero(SeededRng& rng) const;
  Vec sample_vector(SeededRng& rng, std::size_t n) const;

  Fp dot(std::span<const Fp> a, std::span<const Fp> b) const;

  // Charges `count` draws without producing values (challenge sources that
  // derive elements from hashes still count as randomness consumed).
  void charge_draws(std::uint64_t count) const {
    if (meter_) meter_->random_draws += count;
  }

  // Canonical text: decimal value. Canonical bytes: 8-byte little endian.
  static std::string to_text(Fp a);
  Fp parse_text(std::string_view text) const;
  static std::array<std::uint8_t, 8> to_bytes(Fp a);
  Fp from_bytes(std::span<const std::uint8_t, 8> bytes) const;

  bool operator==(const Field& o) const { return p_ == o.p_; }

 private:
  void check(Fp a) const;
  void check(Fp a, Fp b) const {
    check(a);
    check(b);
  }

  std::uint64_t p_;
  CostMeter* meter_ = nullptr;
};

Vec unit_vector(std::size_t n, std::size_t index);
bool is_zero_vector(std::span<const Fp> x);

}  // namespace certilin
