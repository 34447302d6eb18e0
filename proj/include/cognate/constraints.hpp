#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cognate/errors.hpp"
#include "cognate/properties.hpp"
#include "cognate/truth_table.hpp"

namespace cognate {

/// Restriction system over the classify() metrics. Omitted fields are
/// inactive; n == 0 means the dimension is unconstrained.
struct ConstraintSystem {
  int n = 0;
  std::optional<int> min_nonlinearity;
  std::optional<int> max_absolute_indicator;
  std::optional<std::int64_t> max_sum_of_squares;
  bool require_balanced = false;
  std::optional<int> min_degree;
  std::optional<int> min_ci_order;
  std::optional<int> min_algebraic_immunity;

  bool any_active() const {
    return min_nonlinearity || max_absolute_indicator || max_sum_of_squares ||
           require_balanced || min_degree || min_ci_order ||
           min_algebraic_immunity;
  }
};

struct ConstraintViolation {
  std::string constraint;
  std::string required;
  std::string actual;
};

struct ConstraintCheck {
  bool pass = true;
  std::vector<ConstraintViolation> violations;
};

/// Covering-radius ceiling floor(2^{n-1} - 2^{n/2-1}); no function of n
/// variables can exceed it.
inline int max_nonlinearity_bound(int n) {
  const auto half = std::int64_t{1} << (n - 1);
  if (n == 1) return 0;
  if (n % 2 == 0) return static_cast<int>(half - (std::int64_t{1} << (n / 2 - 1)));
  const auto pow = std::int64_t{1} << (n - 2);
  auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(pow)));
  while (root * root > pow) --root;
  while ((root + 1) * (root + 1) <= pow) ++root;
  return static_cast<int>(half - (root + 1));
}

/// Best known balanced nonlinearity, used only to grade warnings: the
/// covering-radius floor minus 2 for even n, 2^{n-1} - 2^{(n-1)/2} for odd n.
inline int balanced_nonlinearity_optimum(int n) {
  int v;
  if (n % 2 == 0)
    v = max_nonlinearity_bound(n) - 2;
  else
    v = static_cast<int>((std::int64_t{1} << (n - 1)) -
                         (std::int64_t{1} << ((n - 1) / 2)));
  return v < 0 ? 0 : v;
}

struct FeasibilityReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

/// Semantic validation of a constraint system: range errors plus
/// reachability warnings. Callers decide whether warnings abort.
inline FeasibilityReport check_feasibility(const ConstraintSystem& cs) {
  FeasibilityReport rep;
  auto err = [&rep](std::string m) { rep.errors.push_back(std::move(m)); };

  if (cs.n < 0 || cs.n > TruthTable::max_vars) {
    err("n must be between 1 and " + std::to_string(TruthTable::max_vars));
    return rep;
  }
  const int n = cs.n;
  if (cs.min_nonlinearity) {
    const int v = *cs.min_nonlinearity;
    if (v < 0)
      err("min_nonlinearity must be nonnegative");
    else if (n != 0 && v > max_nonlinearity_bound(n))
      err("min_nonlinearity " + std::to_string(v) +
          " exceeds the covering-radius bound " +
          std::to_string(max_nonlinearity_bound(n)) + " for n=" +
          std::to_string(n));
  }
  if (cs.max_absolute_indicator) {
    const int v = *cs.max_absolute_indicator;
    if (v < 0)
      err("max_absolute_indicator must be nonnegative");
    else if (n != 0 && v > (1 << n))
      err("max_absolute_indicator " + std::to_string(v) + " exceeds 2^n = " +
          std::to_string(1 << n));
  }
  if (cs.max_sum_of_squares && *cs.max_sum_of_squares < 0)
    err("max_sum_of_squares must be nonnegative");
  if (cs.min_degree) {
    const int v = *cs.min_degree;
    if (v < 0)
      err("min_degree must be nonnegative");
    else if (n != 0 && v > n)
      err("min_degree " + std::to_string(v) + " exceeds n = " +
          std::to_string(n));
  }
  if (cs.min_ci_order) {
    const int v = *cs.min_ci_order;
    if (v < 0)
      err("min_ci_order must be nonnegative");
    else if (n != 0 && v > n)
      err("min_ci_order " + std::to_string(v) + " exceeds n = " +
          std::to_string(n));
  }
  if (cs.min_algebraic_immunity) {
    const int v = *cs.min_algebraic_immunity;
    if (v < 0)
      err("min_algebraic_immunity must be nonnegative");
    else if (n != 0 && v > (n + 1) / 2)
      err("min_algebraic_immunity " + std::to_string(v) +
          " exceeds ceil(n/2) = " + std::to_string((n + 1) / 2));
    else if (n > kAlgebraicImmunityMaxVars)
      err("min_algebraic_immunity is not checkable for n > " +
          std::to_string(kAlgebraicImmunityMaxVars));
  }

  if (cs.require_balanced && cs.min_nonlinearity && n != 0 &&
      *cs.min_nonlinearity > balanced_nonlinearity_optimum(n) &&
      *cs.min_nonlinearity <= max_nonlinearity_bound(n)) {
    rep.warnings.push_back(
        "min_nonlinearity " + std::to_string(*cs.min_nonlinearity) +
        " exceeds the best known balanced value " +
        std::to_string(balanced_nonlinearity_optimum(n)) + " for n=" +
        std::to_string(n) + "; the search is unlikely to succeed");
  }
  return rep;
}

/// Checks every active constraint against an already-computed report.
inline ConstraintCheck evaluate_constraints(const PropertyReport& r,
                                            const ConstraintSystem& cs) {
  if (cs.n != 0 && r.n != cs.n)
    throw DimensionError("constraint system is over n=" + std::to_string(cs.n) +
                         " but the function has n=" + std::to_string(r.n));
  ConstraintCheck out;
  auto fail = [&out](const char* name, const std::string& required,
                     const std::string& actual) {
    out.pass = false;
    out.violations.push_back({name, required, actual});
  };
  if (cs.require_balanced && !r.balanced)
    fail("require_balanced", "true", "false");
  if (cs.min_nonlinearity && r.nonlinearity < *cs.min_nonlinearity)
    fail("min_nonlinearity", std::to_string(*cs.min_nonlinearity),
         std::to_string(r.nonlinearity));
  if (cs.max_absolute_indicator &&
      r.absolute_indicator > *cs.max_absolute_indicator)
    fail("max_absolute_indicator", std::to_string(*cs.max_absolute_indicator),
         std::to_string(r.absolute_indicator));
  if (cs.max_sum_of_squares && r.sum_of_squares > *cs.max_sum_of_squares)
    fail("max_sum_of_squares", std::to_string(*cs.max_sum_of_squares),
         std::to_string(r.sum_of_squares));
  if (cs.min_degree && r.algebraic_degree < *cs.min_degree)
    fail("min_degree", std::to_string(*cs.min_degree),
         std::to_string(r.algebraic_degree));
  if (cs.min_ci_order && r.ci_order < *cs.min_ci_order)
    fail("min_ci_order", std::to_string(*cs.min_ci_order),
         std::to_string(r.ci_order));
  if (cs.min_algebraic_immunity) {
    if (!r.algebraic_immunity)
      fail("min_algebraic_immunity", std::to_string(*cs.min_algebraic_immunity),
           "unavailable");
    else if (*r.algebraic_immunity < *cs.min_algebraic_immunity)
      fail("min_algebraic_immunity", std::to_string(*cs.min_algebraic_immunity),
           std::to_string(*r.algebraic_immunity));
  }
  return out;
}

inline ConstraintCheck evaluate_constraints(const TruthTable& f,
                                            const ConstraintSystem& cs) {
  if (cs.n != 0 && f.vars() != cs.n)
    throw DimensionError("constraint system is over n=" + std::to_string(cs.n) +
                         " but the function has n=" + std::to_string(f.vars()));
  return evaluate_constraints(classify(f), cs);
}

namespace detail {

inline long long parse_integer_value(std::string_view v, int line, int column) {
  long long out = 0;
  const char* last = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), last, out);
  if (ec != std::errc{} || ptr != last)
    throw ParseError("expected an integer, got '" + std::string(v) + "'", line,
                     column);
  return out;
}

inline bool parse_flag_value(std::string_view v, int line, int column) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ParseError("expected true or false, got '" + std::string(v) + "'",
                   line, column);
}

}  // namespace detail

/// Parses the line-oriented "key = value" constraint format. '#' starts a
/// comment; unknown and repeated keys are errors.
inline ConstraintSystem parse_constraints(std::istream& in) {
  ConstraintSystem cs;
  std::set<std::string, std::less<>> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = line;
    if (auto hash = sv.find('#'); hash != std::string_view::npos)
      sv = sv.substr(0, hash);
    std::size_t indent = 0;
    sv = detail::trim(sv, &indent);
    if (sv.empty()) continue;

    const auto eq = sv.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("expected 'key = value'", lineno,
                       static_cast<int>(indent) + 1);
    std::size_t key_off = 0, val_off = 0;
    const auto key = detail::trim(sv.substr(0, eq), &key_off);
    const auto value = detail::trim(sv.substr(eq + 1), &val_off);
    const int key_col = static_cast<int>(indent + key_off) + 1;
    const int val_col = static_cast<int>(indent + eq + 1 + val_off) + 1;
    if (key.empty())
      throw ParseError("missing key before '='", lineno, key_col);
    if (value.empty())
      throw ParseError("missing value for '" + std::string(key) + "'", lineno,
                       val_col);
    if (!seen.insert(std::string(key)).second)
      throw ParseError("repeated key '" + std::string(key) + "'", lineno,
                       key_col);

    auto as_int = [&] {
      const long long v = detail::parse_integer_value(value, lineno, val_col);
      if (v < std::numeric_limits<int>::min() ||
          v > std::numeric_limits<int>::max())
        throw ParseError("value out of range", lineno, val_col);
      return static_cast<int>(v);
    };
    if (key == "n")
      cs.n = as_int();
    else if (key == "min_nonlinearity")
      cs.min_nonlinearity = as_int();
    else if (key == "max_absolute_indicator")
      cs.max_absolute_indicator = as_int();
    else if (key == "max_sum_of_squares")
      cs.max_sum_of_squares = detail::parse_integer_value(value, lineno, val_col);
    else if (key == "require_balanced")
      cs.require_balanced = detail::parse_flag_value(value, lineno, val_col);
    else if (key == "min_degree")
      cs.min_degree = as_int();
    else if (key == "min_ci_order")
      cs.min_ci_order = as_int();
    else if (key == "min_algebraic_immunity")
      cs.min_algebraic_immunity = as_int();
    else
      throw ParseError("unknown key '" + std::string(key) + "'", lineno,
                       key_col);
  }
  return cs;
}

inline ConstraintSystem parse_constraints(const std::string& text) {
  std::istringstream in(text);
  return parse_constraints(in);
}

inline std::string format_constraints(const ConstraintSystem& cs) {
  std::ostringstream out;
  if (cs.n != 0) out << "n = " << cs.n << '\n';
  if (cs.min_nonlinearity)
    out << "min_nonlinearity = " << *cs.min_nonlinearity << '\n';
  if (cs.max_absolute_indicator)
    out << "max_absolute_indicator = " << *cs.max_absolute_indicator << '\n';
  if (cs.max_sum_of_squares)
    out << "max_sum_of_squares = " << *cs.max_sum_of_squares << '\n';
  if (cs.require_balanced) out << "require_balanced = true\n";
  if (cs.min_degree) out << "min_degree = " << *cs.min_degree << '\n';
  if (cs.min_ci_order) out << "min_ci_order = " << *cs.min_ci_order << '\n';
  if (cs.min_algebraic_immunity)
    out << "min_algebraic_immunity = " << *cs.min_algebraic_immunity << '\n';
  return out.str();
}

}  // namespace cognate
