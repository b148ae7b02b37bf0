#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>

#include "certilin/blackbox.hpp"
#include "certilin/field.hpp"

namespace certilin {

// A matrix file: header "n n p", 1-based triples "i j v", terminator "0 0 0".
struct SmsFile {
  std::uint64_t modulus = 0;
  SparseMatrix matrix;
};

// Values may be any (signed, arbitrarily long) decimal integer; they are
// reduced mod p. Errors carry the 1-based line number.
SmsFile parse_sms(std::string_view text);
SmsFile parse_sms(std::istream& in);

std::string emit_sms(const Field& F, const SparseMatrix& m);

// Hex SHA-256 of emit_sms, the digest used in transcript headers.
std::string matrix_digest(const Field& F, const SparseMatrix& m);

}  // namespace certilin
