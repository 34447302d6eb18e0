#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cognate/errors.hpp"
#include "cognate/properties.hpp"
#include "cognate/truth_table.hpp"

namespace cognate {

/// Replacement table mapping n input bits to m output bits. The integer
/// table and the m coordinate functions are two views of the same object:
/// component i at input x is bit i of table[x].
class SubstitutionTable {
 public:
  static constexpr int max_bits = 16;

  SubstitutionTable(int n, int m, std::vector<std::uint32_t> table)
      : n_(n), m_(m), table_(std::move(table)) {
    check_dims(n, m);
    if (table_.size() != (std::size_t{1} << n_))
      throw DimensionError("table must have 2^n entries, got " +
                           std::to_string(table_.size()));
    for (std::size_t x = 0; x < table_.size(); ++x)
      if (table_[x] >> m_)
        throw DimensionError("entry " + std::to_string(table_[x]) +
                             " at input " + std::to_string(x) +
                             " does not fit in " + std::to_string(m_) +
                             " output bits");
    components_.reserve(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i)
      components_.push_back(TruthTable::from_fn(
          n_, [&](std::uint32_t x) { return (table_[x] >> i) & 1u; }));
  }

  int input_bits() const { return n_; }
  int output_bits() const { return m_; }
  std::uint32_t size() const { return std::uint32_t{1} << n_; }

  const std::vector<std::uint32_t>& table() const { return table_; }
  const std::vector<TruthTable>& components() const { return components_; }
  const TruthTable& component(int i) const {
    return components_.at(static_cast<std::size_t>(i));
  }

  std::uint32_t operator()(std::uint32_t x) const { return table_[x]; }

  friend bool operator==(const SubstitutionTable& a,
                         const SubstitutionTable& b) {
    return a.n_ == b.n_ && a.m_ == b.m_ && a.table_ == b.table_;
  }

 private:
  static void check_dims(int n, int m) {
    if (n < 1 || n > max_bits)
      throw CapacityError("input bits must be in [1, " +
                          std::to_string(max_bits) + "], got " +
                          std::to_string(n));
    if (m < 1 || m > n)
      throw DimensionError("output bits must be in [1, n], got " +
                           std::to_string(m));
  }

  int n_;
  int m_;
  std::vector<std::uint32_t> table_;
  std::vector<TruthTable> components_;
};

/// Assembles component functions into a table: table[x] = sum f_i(x) 2^i.
inline SubstitutionTable build_sbox(const std::vector<TruthTable>& components) {
  if (components.empty()) throw DimensionError("component list is empty");
  const int n = components[0].vars();
  for (const auto& f : components)
    if (f.vars() != n)
      throw DimensionError("components must share the variable count");
  const int m = static_cast<int>(components.size());
  std::vector<std::uint32_t> table(std::size_t{1} << n, 0);
  for (int i = 0; i < m; ++i)
    for (std::uint32_t x = 0; x < table.size(); ++x)
      table[x] |= static_cast<std::uint32_t>(components[static_cast<std::size_t>(i)].get(x)) << i;
  return {n, m, std::move(table)};
}

/// Minimum nonlinearity over all nonzero linear combinations of components.
inline int sbox_nonlinearity(const SubstitutionTable& s) {
  int min_nl = -1;
  const auto top = std::uint32_t{1} << s.output_bits();
  for (std::uint32_t c = 1; c < top; ++c) {
    const int nl = nonlinearity(component_combination(s.components(), c));
    if (min_nl < 0 || nl < min_nl) min_nl = nl;
  }
  return min_nl;
}

/// Permutation test for square tables (duplicate scan).
inline bool is_bijective(const SubstitutionTable& s) {
  if (s.input_bits() != s.output_bits())
    throw DimensionError("bijectivity needs n = m");
  std::vector<bool> seen(s.size(), false);
  for (const auto v : s.table()) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

/// The spectral route to the same answer: a square table is a permutation
/// iff every nonzero combination of its components is balanced.
inline bool all_combinations_balanced(const SubstitutionTable& s) {
  const auto top = std::uint32_t{1} << s.output_bits();
  for (std::uint32_t c = 1; c < top; ++c)
    if (!component_combination(s.components(), c).is_balanced()) return false;
  return true;
}

struct SboxReport {
  int n = 0;
  int m = 0;
  std::vector<PropertyReport> combinations;  // entry c-1 describes mask c
  int min_nonlinearity = 0;
  int max_absolute_indicator = 0;
  int worst_linear_structure_count = 0;
  std::optional<bool> bijective;  // present when n == m
};

/// Classifies every nonzero component combination and aggregates the
/// table-level figures. For square tables the two bijectivity routes are
/// both evaluated and must agree.
inline SboxReport sbox_report(const SubstitutionTable& s) {
  SboxReport r;
  r.n = s.input_bits();
  r.m = s.output_bits();
  const auto top = std::uint32_t{1} << r.m;
  r.combinations.reserve(top - 1);
  bool all_balanced = true;
  for (std::uint32_t c = 1; c < top; ++c) {
    PropertyReport p = classify(component_combination(s.components(), c));
    all_balanced = all_balanced && p.balanced;
    const auto ls_count = static_cast<int>(p.linear_structures.size());
    if (c == 1) {
      r.min_nonlinearity = p.nonlinearity;
      r.max_absolute_indicator = p.absolute_indicator;
      r.worst_linear_structure_count = ls_count;
    } else {
      if (p.nonlinearity < r.min_nonlinearity) r.min_nonlinearity = p.nonlinearity;
      if (p.absolute_indicator > r.max_absolute_indicator)
        r.max_absolute_indicator = p.absolute_indicator;
      if (ls_count > r.worst_linear_structure_count)
        r.worst_linear_structure_count = ls_count;
    }
    r.combinations.push_back(std::move(p));
  }
  if (r.n == r.m) {
    const bool by_scan = is_bijective(s);
    if (by_scan != all_balanced)
      throw NumericError("bijectivity checks disagree");  // unreachable
    r.bijective = by_scan;
  }
  return r;
}

// --- text format ------------------------------------------------------
//
// Optional '#' comments; a header line "n=<n> m=<m>"; then 2^n hexadecimal
// entries (no 0x prefix) in input order, any whitespace layout.

inline std::string format_sbox(const SubstitutionTable& s) {
  std::ostringstream out;
  out << "n=" << s.input_bits() << " m=" << s.output_bits() << '\n';
  const int digits = (s.output_bits() + 3) / 4;
  for (std::uint32_t x = 0; x < s.size(); ++x) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string entry(static_cast<std::size_t>(digits), '0');
    for (int d = 0; d < digits; ++d)
      entry[static_cast<std::size_t>(digits - 1 - d)] =
          kHex[(s.table()[x] >> (4 * d)) & 0xfu];
    out << entry << ((x + 1) % 16 == 0 || x + 1 == s.size() ? '\n' : ' ');
  }
  return out.str();
}

inline SubstitutionTable parse_sbox(std::istream& in) {
  const auto tokens = detail::tokenize(in);
  if (tokens.size() < 2)
    throw ParseError("expected 'n=<n> m=<m>' header", 1, 1);

  auto header_value = [](const detail::Token& t, std::string_view key) {
    if (t.text.size() <= key.size() ||
        std::string_view{t.text}.substr(0, key.size()) != key)
      throw ParseError("expected '" + std::string(key) + "<value>', got '" +
                           t.text + "'",
                       t.line, t.column);
    int v = 0;
    for (std::size_t i = key.size(); i < t.text.size(); ++i) {
      const char c = t.text[i];
      if (c < '0' || c > '9')
        throw ParseError("expected '" + std::string(key) + "<value>', got '" +
                             t.text + "'",
                         t.line, t.column);
      v = v * 10 + (c - '0');
      if (v > 1000) break;
    }
    return v;
  };
  const int n = header_value(tokens[0], "n=");
  const int m = header_value(tokens[1], "m=");
  if (n < 1 || n > SubstitutionTable::max_bits)
    throw ParseError("n must be in [1, " +
                         std::to_string(SubstitutionTable::max_bits) + "]",
                     tokens[0].line, tokens[0].column);
  if (m < 1 || m > n)
    throw ParseError("m must be in [1, n]", tokens[1].line, tokens[1].column);

  const std::size_t expected = std::size_t{1} << n;
  if (tokens.size() - 2 != expected)
    throw ParseError("expected " + std::to_string(expected) +
                         " table entries, got " +
                         std::to_string(tokens.size() - 2),
                     tokens.back().line, tokens.back().column);
  std::vector<std::uint32_t> table;
  table.reserve(expected);
  for (std::size_t k = 2; k < tokens.size(); ++k) {
    const auto& t = tokens[k];
    std::uint32_t v = 0;
    for (const char c : t.text) {
      const int h = detail::hex_value(c);
      if (h < 0)
        throw ParseError("invalid hex entry '" + t.text + "'", t.line,
                         t.column);
      if (v > (std::uint32_t{1} << 28))
        throw ParseError("entry '" + t.text + "' is out of range", t.line,
                         t.column);
      v = (v << 4) | static_cast<std::uint32_t>(h);
    }
    if (v >> m)
      throw ParseError("entry '" + t.text + "' does not fit in " +
                           std::to_string(m) + " output bits",
                       t.line, t.column);
    table.push_back(v);
  }
  return {n, m, std::move(table)};
}

inline SubstitutionTable parse_sbox(const std::string& text) {
  std::istringstream in(text);
  return parse_sbox(in);
}

}  // namespace cognate
