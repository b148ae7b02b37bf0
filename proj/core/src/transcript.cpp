#include "certilin/transcript.hpp"

#include <charconv>

#include "certilin/errors.hpp"

namespace certilin {
namespace {

bool parse_uint(std::string_view s, std::uint64_t& out) {
  if (s.empty() || (s.size() > 1 && s[0] == '0')) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string_view strip_key(std::string_view field, std::string_view key, std::size_t line) {
  if (field.substr(0, key.size()) != key) {
    throw ParseError(line, "expected '" + std::string(key) + "'");
  }
  return field.substr(key.size());
}

bool is_hex_digest(std::string_view s) {
  if (s.size() != 64) return false;
  for (char c : s) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return true;
}

}  // namespace

std::string Transcript::header_line() const {
  return "certilin/1 " + std::string(protocol_name(protocol)) + " n=" + std::to_string(n) +
         " p=" + std::to_string(p) + " matrix=" + digest;
}

std::string Transcript::prefix_text() const {
  std::string out = header_line() + "\n";
  for (const auto& e : messages) {
    out += role_name(e.role);
    out += ' ';
    out += message_text(e.message);
    out += '\n';
  }
  return out;
}

std::string Transcript::to_text() const {
  std::string out = prefix_text();
  if (outcome) out += "outcome " + outcome_text(*outcome) + "\n";
  return out;
}

Transcript Transcript::parse(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) throw ParseError(lines.size() + 1, "missing final newline");
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  if (lines.empty()) throw ParseError(1, "empty transcript");

  Transcript t;
  {
    std::vector<std::string_view> h;
    std::size_t s = 0;
    const auto header = lines[0];
    while (true) {
      const auto sp = header.find(' ', s);
      h.push_back(header.substr(s, sp == std::string_view::npos ? std::string_view::npos : sp - s));
      if (sp == std::string_view::npos) break;
      s = sp + 1;
    }
    if (h.size() != 5 || h[0] != "certilin/1") throw ParseError(1, "bad header");
    const auto id = parse_protocol(h[1]);
    if (!id) throw ParseError(1, "unknown protocol '" + std::string(h[1]) + "'");
    t.protocol = *id;
    std::uint64_t n = 0;
    if (!parse_uint(strip_key(h[2], "n=", 1), n)) throw ParseError(1, "bad dimension");
    t.n = n;
    if (!parse_uint(strip_key(h[3], "p=", 1), t.p)) throw ParseError(1, "bad modulus");
    t.digest = std::string(strip_key(h[4], "matrix=", 1));
    if (!is_hex_digest(t.digest)) throw ParseError(1, "bad matrix digest");
  }

  std::optional<Field> F;
  try {
    F.emplace(t.p);
  } catch (const ConfigError& e) {
    throw ParseError(1, e.what());
  }

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto line = lines[i];
    const std::size_t lineno = i + 1;
    if (t.outcome) throw ParseError(lineno, "data after outcome line");
    const auto sp = line.find(' ');
    if (sp == std::string_view::npos) throw ParseError(lineno, "missing payload");
    const auto head = line.substr(0, sp);
    const auto rest = line.substr(sp + 1);
    try {
      if (head == "outcome") {
        t.outcome = parse_outcome(*F, rest);
        continue;
      }
      Role role;
      if (head == "prover") {
        role = Role::prover;
      } else if (head == "verifier") {
        role = Role::verifier;
      } else {
        throw ParseError(lineno, "unknown role '" + std::string(head) + "'");
      }
      const auto sp2 = rest.find(' ');
      if (sp2 == std::string_view::npos) throw ParseError(lineno, "missing payload");
      t.messages.push_back({role, parse_message(*F, rest.substr(0, sp2), rest.substr(sp2 + 1))});
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (!t.outcome) throw ParseError(lines.size(), "missing outcome line");
  return t;
}

}  // namespace certilin
