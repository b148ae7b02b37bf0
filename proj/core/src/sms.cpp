#include "certilin/sms.hpp"

#include <charconv>
#include <iterator>
#include <optional>
#include <sstream>
#include <vector>

#include "certilin/errors.hpp"
#include "certilin/hash.hpp"

namespace certilin {
namespace {

struct Token {
  std::string_view text;
  std::size_t line;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else {
      const std::size_t start = i;
      while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\r' &&
             text[i] != '\n') {
        ++i;
      }
      out.push_back({text.substr(start, i - start), line});
    }
  }
  return out;
}

std::uint64_t parse_index(const Token& t, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
    throw ParseError(t.line, std::string("expected a non-negative integer ") + what + ", got '" +
                                 std::string(t.text) + "'");
  }
  return v;
}

// Signed decimal of any length, reduced digit by digit.
Fp parse_value(const Token& t, std::uint64_t p) {
  std::string_view s = t.text;
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw ParseError(t.line, "empty value token");
  unsigned __int128 acc = 0;
  for (char c : s) {
    if (c < '0' || c > '9') {
      throw ParseError(t.line, "non-integer value '" + std::string(t.text) + "'");
    }
    acc = (acc * 10 + static_cast<unsigned>(c - '0')) % p;
  }
  auto r = static_cast<std::uint64_t>(acc);
  if (negative && r != 0) r = p - r;
  return Fp{r};
}

}  // namespace

SmsFile parse_sms(std::string_view text) {
  const auto tokens = tokenize(text);
  if (tokens.size() < 3) {
    throw ParseError(tokens.empty() ? 1 : tokens.back().line, "missing 'n n p' header");
  }
  const std::uint64_t rows = parse_index(tokens[0], "row count");
  const std::uint64_t cols = parse_index(tokens[1], "column count");
  const std::uint64_t p = parse_index(tokens[2], "modulus");
  if (rows != cols) {
    throw ParseError(tokens[0].line, "matrix must be square, header says " + std::to_string(rows) +
                                         "x" + std::to_string(cols));
  }
  if (rows == 0) throw ParseError(tokens[0].line, "dimension must be positive");
  std::optional<Field> field;
  try {
    field.emplace(p);
  } catch (const ConfigError& e) {
    throw ParseError(tokens[2].line, e.what());
  }

  std::vector<SparseEntry> entries;
  bool terminated = false;
  std::size_t i = 3;
  for (; i + 2 < tokens.size(); i += 3) {
    const std::uint64_t r = parse_index(tokens[i], "row index");
    const std::uint64_t c = parse_index(tokens[i + 1], "column index");
    if (r == 0 && c == 0) {
      if (tokens[i + 2].text != "0") throw ParseError(tokens[i + 2].line, "terminator must be '0 0 0'");
      terminated = true;
      break;
    }
    if (r == 0 || c == 0 || r > rows || c > cols) {
      throw ParseError(tokens[i].line, "coordinates (" + std::to_string(r) + ", " +
                                           std::to_string(c) + ") out of range");
    }
    entries.push_back({r - 1, c - 1, parse_value(tokens[i + 2], p)});
  }
  if (!terminated) {
    const std::size_t line = i < tokens.size() ? tokens[i].line : tokens.back().line;
    throw ParseError(line, "missing '0 0 0' terminator or incomplete triple");
  }
  if (i + 3 < tokens.size()) throw ParseError(tokens[i + 3].line, "data after terminator");
  return SmsFile{p, SparseMatrix(*field, rows, std::move(entries))};
}

SmsFile parse_sms(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_sms(text);
}

std::string emit_sms(const Field& F, const SparseMatrix& m) {
  std::ostringstream out;
  out << m.dim() << ' ' << m.dim() << ' ' << F.modulus() << '\n';
  for (const auto& e : m.entries()) out << e.row + 1 << ' ' << e.col + 1 << ' ' << e.value.v << '\n';
  out << "0 0 0\n";
  return out.str();
}

std::string matrix_digest(const Field& F, const SparseMatrix& m) {
  return sha256_hex(emit_sms(F, m));
}

}  // namespace certilin
