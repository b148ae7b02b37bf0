#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace certilin {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller violated an API contract (dimension mismatch, foreign residue, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Mathematically undefined request (inverse of zero, division by zero poly).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// The field is too small for the requested protocol, or the modulus is unusable.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what, std::uint64_t required = 0)
      : Error(what), required_(required) {}

  std::uint64_t required_modulus() const { return required_; }

 private:
  std::uint64_t required_;
};

// A computed result failed its own consistency check.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace certilin
