#pragma once

// Text and JSON formats for permutations, groups and codes.
//
// Permutations: 1-based cycle notation "(1,2,3)(4,5)" (commas or blanks
// between points, "()" for the identity) or one-line notation "[2,3,1,5,4]".
// Groups: {"degree": n, "generators": ["(1,2)", ...]}.
// Codes: one 0/1 row per generator, or {"n": 8, "gens": ["f0", ...]} where each
// row is hex, coordinate 0 in the most significant bit of the first digit,
// zero padding in the low bits of the last digit.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "sdc/code.hpp"
#include "sdc/error.hpp"
#include "sdc/gf2.hpp"
#include "sdc/perm.hpp"

namespace sdc::io {

using nlohmann::json;

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::uint32_t> parse_points(std::string_view body, std::string_view whole) {
  std::vector<std::uint32_t> pts;
  std::size_t i = 0;
  while (i < body.size()) {
    const char ch = body[i];
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(ch))) throw ParseError("unexpected character '" + std::string(1, ch) + "' in permutation '" + std::string(whole) + "'");
    std::uint64_t value = 0;
    while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) {
      value = value * 10 + static_cast<std::uint64_t>(body[i] - '0');
      if (value > 1'000'000) throw ParseError("point too large in permutation '" + std::string(whole) + "'");
      ++i;
    }
    if (value == 0) throw ParseError("points are 1-based; found 0 in '" + std::string(whole) + "'");
    pts.push_back(static_cast<std::uint32_t>(value - 1));
  }
  return pts;
}

}  // namespace detail

struct ParsedPermutation {
  std::vector<std::vector<std::uint32_t>> cycles;  // 0-based
  std::optional<std::vector<std::uint32_t>> one_line;
  std::size_t min_degree = 0;
};

inline ParsedPermutation parse_permutation_text(std::string_view text) {
  const std::string_view s = detail::trim(text);
  ParsedPermutation out;
  if (s.empty()) throw ParseError("empty permutation");
  if (s.front() == '[') {
    if (s.back() != ']') throw ParseError("unterminated one-line permutation '" + std::string(s) + "'");
    out.one_line = detail::parse_points(s.substr(1, s.size() - 2), s);
    out.min_degree = out.one_line->size();
    return out;
  }
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    if (s[i] != '(') throw ParseError("expected '(' in permutation '" + std::string(s) + "'");
    const auto close = s.find(')', i);
    if (close == std::string_view::npos) throw ParseError("unterminated cycle in permutation '" + std::string(s) + "'");
    auto cyc = detail::parse_points(s.substr(i + 1, close - i - 1), s);
    for (auto p : cyc) out.min_degree = std::max<std::size_t>(out.min_degree, p + 1);
    if (cyc.size() >= 2) out.cycles.push_back(std::move(cyc));
    i = close + 1;
  }
  return out;
}

inline Permutation build_permutation(const ParsedPermutation& p, std::size_t degree) {
  if (p.one_line) {
    if (p.one_line->size() != degree) throw ParseError("one-line permutation of length " + std::to_string(p.one_line->size()) + " in a group of degree " + std::to_string(degree));
    try {
      return Permutation(*p.one_line);
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what());
    }
  }
  if (p.min_degree > degree) throw ParseError("permutation moves point " + std::to_string(p.min_degree) + " beyond degree " + std::to_string(degree));
  try {
    return Permutation::from_cycles(degree, p.cycles);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

inline Permutation parse_permutation(std::string_view text, std::optional<std::size_t> degree = std::nullopt) {
  const auto parsed = parse_permutation_text(text);
  return build_permutation(parsed, degree.value_or(parsed.min_degree));
}

// Generators given as text; degree defaults to the largest point mentioned.
inline PermGroup parse_generators(const std::vector<std::string>& gens, std::optional<std::size_t> degree = std::nullopt, std::size_t cap = kDefaultClosureCap) {
  std::vector<ParsedPermutation> parsed;
  std::size_t n = 0;
  for (const auto& g : gens) {
    parsed.push_back(parse_permutation_text(g));
    n = std::max(n, parsed.back().min_degree);
  }
  if (degree) {
    if (*degree < n) throw ParseError("generators move points beyond degree " + std::to_string(*degree));
    n = *degree;
  }
  std::vector<Permutation> perms;
  for (const auto& p : parsed) perms.push_back(build_permutation(p, n));
  return PermGroup(n, std::move(perms), cap);
}

inline std::string format_permutation(const Permutation& p) {
  const auto cycles = p.cycles();
  if (cycles.empty()) return "()";
  std::string s;
  for (const auto& c : cycles) {
    s += '(';
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k != 0) s += ',';
      s += std::to_string(c[k] + 1);
    }
    s += ')';
  }
  return s;
}

inline PermGroup group_from_json(const json& j, std::size_t cap = kDefaultClosureCap) {
  if (!j.is_object() || !j.contains("generators") || !j["generators"].is_array()) throw ParseError("group descriptor needs a \"generators\" array");
  std::vector<std::string> gens;
  for (const auto& g : j["generators"]) {
    if (!g.is_string()) throw ParseError("group generators must be strings");
    gens.push_back(g.get<std::string>());
  }
  std::optional<std::size_t> degree;
  if (j.contains("degree")) {
    if (!j["degree"].is_number_unsigned()) throw ParseError("group \"degree\" must be a non-negative integer");
    degree = j["degree"].get<std::size_t>();
  }
  return parse_generators(gens, degree, cap);
}

inline json group_to_json(const PermGroup& g) {
  json gens = json::array();
  for (const auto& p : g.generators()) gens.push_back(format_permutation(p));
  return json{{"degree", g.degree()}, {"generators", gens}};
}

inline std::string to_hex(const BitVector& v) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s;
  for (std::size_t i = 0; i < v.size(); i += 4) {
    unsigned nibble = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      nibble <<= 1;
      if (i + b < v.size() && v.get(i + b)) nibble |= 1U;
    }
    s += digits[nibble];
  }
  return s;
}

inline BitVector from_hex(std::string_view hex, std::size_t n) {
  if (hex.size() != (n + 3) / 4) throw ParseError("hex row '" + std::string(hex) + "' has " + std::to_string(hex.size()) + " digits, expected " + std::to_string((n + 3) / 4) + " for length " + std::to_string(n));
  BitVector v(n);
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const char ch = static_cast<char>(std::tolower(static_cast<unsigned char>(hex[d])));
    unsigned nibble = 0;
    if (ch >= '0' && ch <= '9') {
      nibble = static_cast<unsigned>(ch - '0');
    } else if (ch >= 'a' && ch <= 'f') {
      nibble = static_cast<unsigned>(ch - 'a' + 10);
    } else {
      throw ParseError("invalid hex digit in '" + std::string(hex) + "'");
    }
    for (std::size_t b = 0; b < 4; ++b) {
      if (((nibble >> (3 - b)) & 1U) == 0) continue;
      const std::size_t pos = 4 * d + b;
      if (pos >= n) throw ParseError("hex row '" + std::string(hex) + "' sets padding bits beyond length " + std::to_string(n));
      v.set(pos);
    }
  }
  return v;
}

inline json code_to_json(const BinaryCode& c) {
  json gens = json::array();
  json rows = json::array();
  for (const auto& r : c.generators().row_list()) {
    gens.push_back(to_hex(r));
    rows.push_back(r.to_string());
  }
  return json{{"n", c.length()}, {"k", c.dimension()}, {"gens", gens}, {"rows", rows}};
}

inline BinaryCode code_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_unsigned()) throw ParseError("code descriptor needs a non-negative integer \"n\"");
  const auto n = j["n"].get<std::size_t>();
  BitMatrix m(n);
  if (j.contains("gens")) {
    if (!j["gens"].is_array()) throw ParseError("code \"gens\" must be an array of hex strings");
    for (const auto& g : j["gens"]) {
      if (!g.is_string()) throw ParseError("code \"gens\" must be an array of hex strings");
      m.append_row(from_hex(g.get<std::string>(), n));
    }
  } else if (j.contains("rows")) {
    for (const auto& r : j["rows"]) {
      if (!r.is_string() || r.get<std::string>().size() != n) throw ParseError("code \"rows\" entries must be 0/1 strings of length n");
      m.append_row(BitVector::from_string(r.get<std::string>()));
    }
  } else {
    throw ParseError("code descriptor needs \"gens\" or \"rows\"");
  }
  return BinaryCode(m);
}

// One generator per line (blank lines and lines starting with '#' ignored);
// ';' also separates rows so a code fits on a command line.
inline BinaryCode parse_code_text(std::string_view text) {
  std::vector<std::string> rows;
  std::string cur;
  auto flush = [&] {
    const auto t = detail::trim(cur);
    if (!t.empty() && t.front() != '#') rows.emplace_back(t);
    cur.clear();
  };
  for (char ch : text) {
    if (ch == '\n' || ch == ';') {
      flush();
    } else {
      cur += ch;
    }
  }
  flush();
  if (rows.empty()) throw ParseError("code text has no rows");
  const std::size_t n = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != n) throw ParseError("code rows have different lengths");
  }
  return BinaryCode::from_rows(n, rows);
}

inline std::string format_code_text(const BinaryCode& c) {
  std::string s;
  for (const auto& r : c.generators().row_list()) {
    s += r.to_string();
    s += '\n';
  }
  return s;
}

// JSON if it looks like JSON, else the row format.
inline BinaryCode parse_code(std::string_view text) {
  const auto t = detail::trim(text);
  if (!t.empty() && t.front() == '{') {
    json j;
    try {
      j = json::parse(t);
    } catch (const json::exception& e) {
      throw ParseError(std::string("invalid code JSON: ") + e.what());
    }
    return code_from_json(j);
  }
  return parse_code_text(t);
}

}  // namespace sdc::io
