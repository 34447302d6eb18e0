#pragma once

#include <bit>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cognate/bitvec.hpp"
#include "cognate/errors.hpp"

namespace cognate {

/// Truth table of a Boolean function of n variables, 1 <= n <= 20.
/// Entry x is f(x); variable x_i is bit (i-1) of the index, so x_1 is the
/// least significant index bit. This convention is fixed everywhere,
/// including the file formats.
class TruthTable {
 public:
  static constexpr int max_vars = 20;

  /// Zero function of one variable; a valid placeholder state.
  TruthTable() : TruthTable(1) {}

  explicit TruthTable(int n) : n_(checked(n)), bits_(std::size_t{1} << n) {}

  TruthTable(int n, BitVec bits) : n_(checked(n)), bits_(std::move(bits)) {
    if (bits_.size() != (std::size_t{1} << n_))
      throw DimensionError("bit vector length must be 2^n");
  }

  template <typename Fn>
  static TruthTable from_fn(int n, Fn&& fn) {
    TruthTable t(n);
    for (std::uint32_t x = 0; x < t.size(); ++x) t.set(x, static_cast<bool>(fn(x)));
    return t;
  }

  int vars() const { return n_; }
  std::uint32_t size() const { return std::uint32_t{1} << n_; }

  bool get(std::uint32_t x) const { return bits_.test(x); }
  void set(std::uint32_t x, bool v) { bits_.set(x, v); }
  void flip(std::uint32_t x) { bits_.flip(x); }

  std::uint32_t weight() const { return static_cast<std::uint32_t>(bits_.count()); }
  bool is_balanced() const { return weight() == size() / 2; }

  TruthTable complement() const {
    TruthTable t = *this;
    t.bits_.flip_all();
    return t;
  }

  TruthTable flipped(std::uint32_t x) const {
    TruthTable t = *this;
    t.flip(x);
    return t;
  }

  friend TruthTable operator^(const TruthTable& a, const TruthTable& b) {
    if (a.n_ != b.n_) throw DimensionError("xor of tables with different n");
    TruthTable t = a;
    t.bits_ ^= b.bits_;
    return t;
  }

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

  const BitVec& bits() const { return bits_; }
  BitVec& bits() { return bits_; }

 private:
  static int checked(int n) {
    if (n < 1 || n > max_vars)
      throw CapacityError("variable count must be in [1, 20], got " + std::to_string(n));
    return n;
  }

  int n_;
  BitVec bits_;
};

/// XOR of the components selected by the nonzero bit mask.
inline TruthTable component_combination(const std::vector<TruthTable>& components,
                                        std::uint32_t mask) {
  if (components.empty()) throw DimensionError("component list is empty");
  if (mask == 0 ||
      (components.size() < 32 && (mask >> components.size()) != 0))
    throw DimensionError("combination mask must select existing components");
  TruthTable g(components[0].vars());
  for (std::size_t i = 0; i < components.size(); ++i)
    if ((mask >> i) & 1) g = g ^ components[i];
  return g;
}

// --- text format ------------------------------------------------------
//
// A truth-table file holds optional '#' comments and one token: either
// 2^n characters '0'/'1' (character j is f(j)) or "hex:" followed by
// 2^n/4 hex digits, digit k encoding f(4k)..f(4k+3) with f(4k) as the
// most significant bit of the nibble (hex form needs n >= 2).

namespace detail {

inline int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

inline bool is_power_of_two(std::size_t v) { return v && std::has_single_bit(v); }

inline std::string_view trim(std::string_view s, std::size_t* begin = nullptr) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  if (begin) *begin = b;
  return s.substr(b, e - b);
}

struct Token {
  std::string text;
  int line = 0;
  int column = 0;
};

// Splits a stream into whitespace-separated tokens, dropping everything
// from '#' to end of line.
inline std::vector<Token> tokenize(std::istream& in) {
  std::vector<Token> tokens;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t cut = line.find('#');
    const std::string_view body{line.data(), cut == std::string::npos ? line.size() : cut};
    std::size_t i = 0;
    while (i < body.size()) {
      while (i < body.size() && (body[i] == ' ' || body[i] == '\t' || body[i] == '\r')) ++i;
      const std::size_t start = i;
      while (i < body.size() && body[i] != ' ' && body[i] != '\t' && body[i] != '\r') ++i;
      if (i > start)
        tokens.push_back({std::string(body.substr(start, i - start)), lineno,
                          static_cast<int>(start) + 1});
    }
  }
  return tokens;
}

}  // namespace detail

/// Parses one truth-table token ("0110..." or "hex:..").
inline TruthTable parse_truth_table_token(std::string_view token, int line = 1, int column = 1) {
  using detail::is_power_of_two;
  if (token.substr(0, 4) == "hex:") {
    const std::string_view digits = token.substr(4);
    if (digits.empty() || !is_power_of_two(digits.size()))
      throw ParseError("hex truth table needs 2^n/4 digits (n >= 2), got " +
                           std::to_string(digits.size()),
                       line, column + 4);
    const int n = std::countr_zero(digits.size()) + 2;
    if (n > TruthTable::max_vars)
      throw ParseError("truth table exceeds the 20-variable cap", line, column);
    TruthTable t(n);
    for (std::size_t k = 0; k < digits.size(); ++k) {
      const int v = detail::hex_value(digits[k]);
      if (v < 0)
        throw ParseError(std::string("invalid hex digit '") + digits[k] + "'", line,
                         column + 4 + static_cast<int>(k));
      for (int b = 0; b < 4; ++b)
        t.set(static_cast<std::uint32_t>(4 * k + b), (v >> (3 - b)) & 1);
    }
    return t;
  }
  if (token.size() < 2 || !is_power_of_two(token.size()))
    throw ParseError("binary truth table needs 2^n characters (n >= 1), got " +
                         std::to_string(token.size()),
                     line, column);
  const int n = std::countr_zero(token.size());
  if (n > TruthTable::max_vars)
    throw ParseError("truth table exceeds the 20-variable cap", line, column);
  TruthTable t(n);
  for (std::size_t j = 0; j < token.size(); ++j) {
    if (token[j] != '0' && token[j] != '1')
      throw ParseError(std::string("invalid character '") + token[j] + "' in truth table",
                       line, column + static_cast<int>(j));
    t.set(static_cast<std::uint32_t>(j), token[j] == '1');
  }
  return t;
}

/// Parses a truth-table file: comments plus exactly one token.
inline TruthTable parse_truth_table(std::istream& in) {
  const auto tokens = detail::tokenize(in);
  if (tokens.empty()) throw ParseError("no truth table found", 1, 1);
  if (tokens.size() > 1)
    throw ParseError("unexpected extra token '" + tokens[1].text + "'", tokens[1].line,
                     tokens[1].column);
  return parse_truth_table_token(tokens[0].text, tokens[0].line, tokens[0].column);
}

inline TruthTable parse_truth_table(const std::string& text) {
  std::istringstream in(text);
  return parse_truth_table(in);
}

/// One-token text form; binary up to n = 5, hex beyond. Round-trips
/// bit-exactly through parse_truth_table_token.
inline std::string format_truth_table(const TruthTable& f) {
  if (f.vars() <= 5) {
    std::string s(f.size(), '0');
    for (std::uint32_t x = 0; x < f.size(); ++x)
      if (f.get(x)) s[x] = '1';
    return s;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string s = "hex:";
  s.reserve(4 + f.size() / 4);
  for (std::uint32_t k = 0; k < f.size() / 4; ++k) {
    int v = 0;
    for (int b = 0; b < 4; ++b) v |= static_cast<int>(f.get(4 * k + b)) << (3 - b);
    s.push_back(kHex[v]);
  }
  return s;
}

}  // namespace cognate
