#include "certilin/field.hpp"

#include <charconv>

#include "certilin/errors.hpp"

namespace certilin {
namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

// Miller-Rabin with the first twelve prime bases is exact for n < 3.3e24.
bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t b : kBases) {
    if (n % b == 0) return n == b;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t b : kBases) {
    std::uint64_t x = powmod(b, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field::Field(std::uint64_t p) : p_(p) {
  if (p < 3 || p >= kMaxModulus) {
    throw ConfigError("modulus " + std::to_string(p) + " outside [3, 2^62)");
  }
  if (!is_prime_u64(p)) {
    throw ConfigError("modulus " + std::to_string(p) + " is not prime");
  }
}

void Field::check(Fp a) const {
  if (a.v >= p_) {
    throw UsageError("residue " + std::to_string(a.v) + " does not belong to Z_" +
                     std::to_string(p_));
  }
}

Fp Field::from_i64(std::int64_t x) const {
  const auto sp = static_cast<std::int64_t>(p_);
  std::int64_t r = x % sp;
  if (r < 0) r += sp;
  return Fp{static_cast<std::uint64_t>(r)};
}

Fp Field::add(Fp a, Fp b) const {
  check(a, b);
  if (meter_) ++meter_->add;
  std::uint64_t s = a.v + b.v;
  if (s >= p_) s -= p_;
  return Fp{s};
}

Fp Field::sub(Fp a, Fp b) const {
  check(a, b);
  if (meter_) ++meter_->add;
  return Fp{a.v >= b.v ? a.v - b.v : a.v + p_ - b.v};
}

Fp Field::mul(Fp a, Fp b) const {
  check(a, b);
  if (meter_) ++meter_->mul;
  return Fp{mulmod(a.v, b.v, p_)};
}

Fp Field::neg(Fp a) const {
  check(a);
  if (meter_) ++meter_->add;
  return Fp{a.v == 0 ? 0 : p_ - a.v};
}

Fp Field::inv(Fp a) const {
  check(a);
  if (a.v == 0) throw DomainError("zero has no inverse");
  if (meter_) ++meter_->inv;
  // Extended Euclid on signed 128-bit to stay clear of overflow.
  __int128 t = 0, new_t = 1;
  __int128 r = p_, new_r = a.v;
  while (new_r != 0) {
    const __int128 q = r / new_r;
    const __int128 tt = t - q * new_t;
    t = new_t;
    new_t = tt;
    const __int128 rr = r - q * new_r;
    r = new_r;
    new_r = rr;
  }
  if (t < 0) t += p_;
  return Fp{static_cast<std::uint64_t>(t)};
}

Fp Field::pow(Fp a, std::uint64_t e) const {
  check(a);
  Fp result = one();
  Fp base = a;
  bool started = false;
  // Left-to-right so that the meter sees at most 2*floor(log2 e) products.
  for (int bit = 63; bit >= 0; --bit) {
    if (started) result = mul(result, result);
    if ((e >> bit) & 1) {
      result = started ? mul(result, base) : base;
      started = true;
    }
  }
  return result;
}

Fp Field::sample(SeededRng& rng) const {
  if (meter_) ++meter_->random_draws;
  return Fp{rng.uniform_below(p_)};
}

Fp Field::sample_nonzero(SeededRng& rng) const {
  if (meter_) ++meter_->random_draws;
  return Fp{1 + rng.uniform_below(p_ - 1)};
}

Vec Field::sample_vector(SeededRng& rng, std::size_t n) const {
  Vec out(n);
  for (auto& x : out) x = sample(rng);
  return out;
}

Fp Field::dot(std::span<const Fp> a, std::span<const Fp> b) const {
  if (a.size() != b.size()) {
    throw UsageError("dot product of vectors with lengths " + std::to_string(a.size()) +
                     " and " + std::to_string(b.size()));
  }
  if (a.empty()) return zero();
  Fp acc = mul(a[0], b[0]);
  for (std::size_t i = 1; i < a.size(); ++i) acc = add(acc, mul(a[i], b[i]));
  return acc;
}

std::string Field::to_text(Fp a) { return std::to_string(a.v); }

Fp Field::parse_text(std::string_view text) const {
  std::uint64_t value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc{} || ptr != last) {
    throw UsageError("not a canonical field element: '" + std::string(text) + "'");
  }
  if (text.size() > 1 && text[0] == '0') {
    throw UsageError("leading zero in field element: '" + std::string(text) + "'");
  }
  if (value >= p_) {
    throw UsageError("field element " + std::string(text) + " not below modulus " +
                     std::to_string(p_));
  }
  return Fp{value};
}

std::array<std::uint8_t, 8> Field::to_bytes(Fp a) {
  std::array<std::uint8_t, 8> out{};
  for (int i = 0; i < 8; ++i) out[i] = static_cast<std::uint8_t>(a.v >> (8 * i));
  return out;
}

Fp Field::from_bytes(std::span<const std::uint8_t, 8> bytes) const {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | bytes[i];
  Fp a{v};
  check(a);
  return a;
}

Vec unit_vector(std::size_t n, std::size_t index) {
  if (index >= n) throw UsageError("unit vector index out of range");
  Vec e(n);
  e[index] = Fp{1};
  return e;
}

bool is_zero_vector(std::span<const Fp> x) {
  for (Fp a : x) {
    if (!a.is_zero()) return false;
  }
  return true;
}

std::string to_string(const CostMeter& m) {
  return "mul=" + std::to_string(m.mul) + " add=" + std::to_string(m.add) +
         " inv=" + std::to_string(m.inv) + " matvec=" + std::to_string(m.matvec) +
         " random=" + std::to_string(m.random_draws) +
         " sent=" + std::to_string(m.elements_sent);
}

}  // namespace certilin
