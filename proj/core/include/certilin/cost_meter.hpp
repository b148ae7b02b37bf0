#pragma once

#include <cstdint>
#include <string>

namespace certilin {

// Operation counters for one party of one protocol session.
struct CostMeter {
  std::uint64_t mul = 0;
  std::uint64_t add = 0;
  std::uint64_t inv = 0;
  std::uint64_t matvec = 0;
  std::uint64_t random_draws = 0;
  std::uint64_t elements_sent = 0;

  std::uint64_t field_ops() const { return mul + add + inv; }

  CostMeter& operator+=(const CostMeter& o) {
    mul += o.mul;
    add += o.add;
    inv += o.inv;
    matvec += o.matvec;
    random_draws += o.random_draws;
    elements_sent += o.elements_sent;
    return *this;
  }

  bool operator==(const CostMeter&) const = default;
};

std::string to_string(const CostMeter& m);

}  // namespace certilin
