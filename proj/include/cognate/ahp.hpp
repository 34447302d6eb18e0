#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cognate/errors.hpp"
#include "cognate/properties.hpp"
#include "cognate/truth_table.hpp"

namespace cognate {

/// Exact nonnegative rational; keeps pairwise-comparison validation free of
/// rounding (reciprocity must hold exactly).
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational of(std::int64_t n, std::int64_t d) {
    if (d == 0) throw NumericError("zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    return {g ? n / g : n, g ? d / g : d};
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend Rational operator*(const Rational& a, const Rational& b) {
    // cross-reduce before multiplying to keep the factors small
    const std::int64_t g1 = std::gcd(a.num < 0 ? -a.num : a.num, b.den);
    const std::int64_t g2 = std::gcd(b.num < 0 ? -b.num : b.num, a.den);
    return Rational::of((a.num / g1) * (b.num / g2), (a.den / g2) * (b.den / g1));
  }

  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Parses an entry as integer, decimal, or fraction "p/q"; entries must be
/// positive.
inline Rational parse_rational(std::string_view text, int line, int column) {
  const auto bad = [&](const std::string& why) {
    return ParseError("invalid entry '" + std::string(text) + "': " + why,
                      line, column);
  };
  if (text.empty()) throw bad("empty");
  if (text.size() > 18) throw bad("too long");

  auto digits_value = [&](std::string_view d) {
    if (d.empty()) throw bad("missing digits");
    std::int64_t v = 0;
    for (const char c : d) {
      if (c < '0' || c > '9') throw bad("unexpected character");
      v = v * 10 + (c - '0');
    }
    return v;
  };

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::int64_t p = digits_value(text.substr(0, slash));
    const std::int64_t q = digits_value(text.substr(slash + 1));
    if (q == 0) throw bad("zero denominator");
    return Rational::of(p, q);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto int_part = text.substr(0, dot);
    const auto frac_part = text.substr(dot + 1);
    if (frac_part.empty()) throw bad("missing fractional digits");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    const std::int64_t whole = int_part.empty() ? 0 : digits_value(int_part);
    return Rational::of(whole * scale + digits_value(frac_part), scale);
  }
  return Rational::of(digits_value(text), 1);
}

/// Reciprocal pairwise-comparison matrix on the 1/9..9 judgment scale.
/// Validation is exact-rational and happens before any floating point.
class ComparisonMatrix {
 public:
  explicit ComparisonMatrix(std::vector<std::vector<Rational>> entries)
      : entries_(std::move(entries)) {
    const std::size_t k = entries_.size();
    if (k == 0) throw DimensionError("matrix must have at least one row");
    for (const auto& row : entries_)
      if (row.size() != k)
        throw DimensionError("matrix must be square, got a row of " +
                             std::to_string(row.size()) + " in a " +
                             std::to_string(k) + "-row matrix");
    const Rational one{1, 1};
    for (std::size_t i = 0; i < k; ++i) {
      if (entries_[i][i] != one)
        throw std::invalid_argument("diagonal entry (" + cell(i, i) +
                                    ") must be 1");
      for (std::size_t j = 0; j < k; ++j) {
        const Rational& a = entries_[i][j];
        if (a.num <= 0)
          throw std::invalid_argument("entry (" + cell(i, j) +
                                      ") must be positive");
        if (a.num > 9 * a.den || 9 * a.num < a.den)
          throw std::invalid_argument("entry (" + cell(i, j) +
                                      ") is outside the scale [1/9, 9]");
        if (j > i && !(a * entries_[j][i] == one))
          throw std::invalid_argument("entries (" + cell(i, j) + ") and (" +
                                      cell(j, i) + ") are not reciprocal");
      }
    }
  }

  int dimension() const { return static_cast<int>(entries_.size()); }
  const Rational& at(int i, int j) const {
    return entries_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  double value(int i, int j) const { return at(i, j).value(); }

 private:
  static std::string cell(std::size_t i, std::size_t j) {
    return std::to_string(i + 1) + "," + std::to_string(j + 1);
  }

  std::vector<std::vector<Rational>> entries_;
};

struct PriorityVector {
  std::vector<double> weights;  // nonnegative, sum 1
  double lambda_max = 0.0;
  double consistency_index = 0.0;
  double consistency_ratio = 0.0;
};

/// Random-index table for k = 1..10; larger judgments are rejected rather
/// than extrapolated.
inline double random_index(int k) {
  static constexpr double kTable[11] = {0.0,  0.0,  0.0,  0.58, 0.90, 1.12,
                                        1.24, 1.32, 1.41, 1.45, 1.49};
  if (k < 1) throw DimensionError("dimension must be at least 1");
  if (k > 10)
    throw CapacityError("the random-index table covers dimensions up to 10");
  return kTable[k];
}

inline double consistency_ratio(double consistency_index, int k) {
  const double ri = random_index(k);
  if (k <= 2) return 0.0;
  return consistency_index / ri;
}

inline double consistency_ratio(const PriorityVector& pv, int k) {
  return consistency_ratio(pv.consistency_index, k);
}

/// Matrices with a consistency ratio above this are flagged in reports but
/// remain usable.
inline constexpr double kConsistencyRatioLimit = 0.10;

/// Principal right eigenvector by power iteration from the geometric-mean
/// vector, normalized to sum 1; lambda_max is the Rayleigh quotient at
/// convergence (successive iterates within 1e-12 in max norm).
inline PriorityVector priority_vector(const ComparisonMatrix& m) {
  const int k = m.dimension();
  const auto n = static_cast<std::size_t>(k);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    double log_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      log_sum += std::log(m.value(static_cast<int>(i), static_cast<int>(j)));
    v[i] = std::exp(log_sum / k);
  }
  const double start_sum = std::accumulate(v.begin(), v.end(), 0.0);
  for (auto& x : v) x /= start_sum;

  std::vector<double> next(n);
  bool converged = false;
  for (int iter = 0; iter < 10'000 && !converged; ++iter) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        acc += m.value(static_cast<int>(i), static_cast<int>(j)) * v[j];
      next[i] = acc;
      sum += acc;
    }
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= sum;
      diff = std::max(diff, std::abs(next[i] - v[i]));
    }
    v.swap(next);
    converged = diff < 1e-12;
  }
  if (!converged)
    throw NumericError("power iteration did not converge in 10000 steps");

  std::vector<double> av(n);
  double vav = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      acc += m.value(static_cast<int>(i), static_cast<int>(j)) * v[j];
    av[i] = acc;
    vav += v[i] * acc;
    vv += v[i] * v[i];
  }
  PriorityVector pv;
  pv.weights = std::move(v);
  pv.lambda_max = vav / vv;
  pv.consistency_index = k <= 2 ? 0.0 : (pv.lambda_max - k) / (k - 1);
  pv.consistency_ratio = consistency_ratio(pv.consistency_index, k);
  return pv;
}

enum class Direction { benefit, cost };

/// Normalizes measured values into weights: proportional for benefit,
/// inverse-proportional for cost. All-zero benefit vectors become uniform;
/// a zero among cost values shifts every value by +1 before inversion.
inline std::vector<double> score_measured(const std::vector<double>& values,
                                          Direction direction) {
  if (values.empty())
    throw std::invalid_argument("at least one value is required");
  for (const double v : values)
    if (v < 0.0 || !std::isfinite(v))
      throw std::invalid_argument("measured values must be finite and nonnegative");
  std::vector<double> w(values.size());
  if (direction == Direction::benefit) {
    const double sum = std::accumulate(values.begin(), values.end(), 0.0);
    if (sum == 0.0) {
      std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(w.size()));
      return w;
    }
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = values[i] / sum;
    return w;
  }
  const bool shift =
      std::any_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = 1.0 / (values[i] + (shift ? 1.0 : 0.0));
    sum += w[i];
  }
  for (auto& x : w) x /= sum;
  return w;
}

struct Criterion {
  std::string name;
  std::optional<ComparisonMatrix> judgment;  // judgment criterion
  std::optional<Direction> direction;        // measured criterion ...
  std::vector<double> values;                // ... with one value per alternative
};

struct DecisionProblem {
  ComparisonMatrix criteria_matrix;
  std::vector<std::string> alternatives;
  std::vector<Criterion> criteria;
};

struct RankedAlternative {
  std::size_t index = 0;  // position in the original alternative list
  std::string label;
  double score = 0.0;
};

struct CriterionScore {
  std::string name;
  std::vector<double> scores;  // one per alternative, sum 1
  std::optional<PriorityVector> judgment_priorities;
};

struct SynthesisResult {
  PriorityVector criteria_priorities;
  std::vector<CriterionScore> criteria;
  std::vector<RankedAlternative> ranking;  // descending score, ties original

  const RankedAlternative& elected() const { return ranking.front(); }
};

/// Weighted-sum synthesis: global score of alternative j is the
/// criteria-weight dot product of the per-criterion scores.
inline SynthesisResult synthesize(const DecisionProblem& p) {
  const std::size_t k = p.criteria.size();
  const std::size_t n_alt = p.alternatives.size();
  if (k == 0) throw std::invalid_argument("at least one criterion is required");
  if (n_alt == 0)
    throw std::invalid_argument("at least one alternative is required");
  if (p.criteria_matrix.dimension() != static_cast<int>(k))
    throw DimensionError("criteria matrix is " +
                         std::to_string(p.criteria_matrix.dimension()) +
                         "-dimensional but there are " + std::to_string(k) +
                         " criteria");

  SynthesisResult result;
  result.criteria_priorities = priority_vector(p.criteria_matrix);
  result.criteria.reserve(k);
  for (const auto& c : p.criteria) {
    CriterionScore cs;
    cs.name = c.name;
    if (c.judgment.has_value() == (c.direction.has_value() || !c.values.empty()))
      throw std::invalid_argument("criterion '" + c.name +
                                  "' must be either judgment or measured");
    if (c.judgment) {
      if (c.judgment->dimension() != static_cast<int>(n_alt))
        throw DimensionError("judgment matrix of '" + c.name + "' is " +
                             std::to_string(c.judgment->dimension()) +
                             "-dimensional but there are " +
                             std::to_string(n_alt) + " alternatives");
      cs.judgment_priorities = priority_vector(*c.judgment);
      cs.scores = cs.judgment_priorities->weights;
    } else {
      if (c.values.size() != n_alt)
        throw DimensionError("criterion '" + c.name + "' has " +
                             std::to_string(c.values.size()) +
                             " values but there are " + std::to_string(n_alt) +
                             " alternatives");
      cs.scores = score_measured(c.values, *c.direction);
    }
    result.criteria.push_back(std::move(cs));
  }

  result.ranking.reserve(n_alt);
  for (std::size_t j = 0; j < n_alt; ++j) {
    double score = 0.0;
    for (std::size_t c = 0; c < k; ++c)
      score += result.criteria_priorities.weights[c] *
               result.criteria[c].scores[j];
    result.ranking.push_back({j, p.alternatives[j], score});
  }
  std::stable_sort(result.ranking.begin(), result.ranking.end(),
                   [](const RankedAlternative& a, const RankedAlternative& b) {
                     return a.score > b.score;
                   });
  return result;
}

// --- metric keys ------------------------------------------------------

/// Numeric report fields addressable from decision files.
inline const std::vector<std::string>& metric_keys() {
  static const std::vector<std::string> keys = {
      "weight",          "nonlinearity",
      "algebraic_degree", "absolute_indicator",
      "sum_of_squares",  "ci_order",
      "resiliency_order", "algebraic_immunity",
      "linear_structure_count"};
  return keys;
}

inline bool is_metric_key(std::string_view key) {
  const auto& keys = metric_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

inline double metric_value(const PropertyReport& r, std::string_view key) {
  if (key == "weight") return r.weight;
  if (key == "nonlinearity") return r.nonlinearity;
  if (key == "algebraic_degree") return r.algebraic_degree;
  if (key == "absolute_indicator") return r.absolute_indicator;
  if (key == "sum_of_squares") return static_cast<double>(r.sum_of_squares);
  if (key == "ci_order") return r.ci_order;
  if (key == "resiliency_order") {
    if (!r.resiliency_order)
      throw NumericError("resiliency_order is unavailable (not balanced)");
    return *r.resiliency_order;
  }
  if (key == "algebraic_immunity") {
    if (!r.algebraic_immunity)
      throw NumericError("algebraic_immunity is unavailable for this n");
    return *r.algebraic_immunity;
  }
  if (key == "linear_structure_count")
    return static_cast<double>(r.linear_structures.size());
  throw std::invalid_argument("unknown metric key '" + std::string(key) + "'");
}

// --- file formats -----------------------------------------------------
//
// Matrix file: '#' comments; k lines of k whitespace-separated entries,
// each an integer, a decimal, or a fraction "p/q".
//
// Decision file: '#' comments; one "criteria_matrix = <path>" line; then
// one line per criterion, either
//   criterion <name> = judgment <matrix-path>
//   criterion <name> = measured benefit|cost <metric-key>

inline ComparisonMatrix parse_matrix(std::istream& in) {
  const auto tokens = detail::tokenize(in);
  if (tokens.empty()) throw ParseError("empty matrix", 1, 1);
  std::vector<std::vector<Rational>> rows;
  std::vector<int> row_lines;
  int current_line = -1;
  for (const auto& t : tokens) {
    if (t.line != current_line) {
      rows.emplace_back();
      row_lines.push_back(t.line);
      current_line = t.line;
    }
    rows.back().push_back(parse_rational(t.text, t.line, t.column));
  }
  const std::size_t k = rows.size();
  for (std::size_t i = 0; i < k; ++i)
    if (rows[i].size() != k)
      throw ParseError("matrix has " + std::to_string(k) + " rows but row " +
                           std::to_string(i + 1) + " has " +
                           std::to_string(rows[i].size()) + " entries",
                       row_lines[i], 1);
  try {
    return ComparisonMatrix(std::move(rows));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), tokens[0].line, tokens[0].column);
  }
}

inline ComparisonMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix(in);
}

struct DecisionSpecCriterion {
  std::string name;
  bool is_judgment = false;
  std::string matrix_path;  // judgment
  Direction direction = Direction::benefit;
  std::string metric_key;  // measured
};

struct DecisionSpec {
  std::string criteria_matrix_path;
  std::vector<DecisionSpecCriterion> criteria;
};

inline DecisionSpec parse_decision_spec(std::istream& in) {
  DecisionSpec spec;
  bool have_matrix = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = line;
    if (const auto hash = sv.find('#'); hash != std::string_view::npos)
      sv = sv.substr(0, hash);
    std::size_t indent = 0;
    sv = detail::trim(sv, &indent);
    if (sv.empty()) continue;
    const int col = static_cast<int>(indent) + 1;

    const auto eq = sv.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("expected 'key = value'", lineno, col);
    std::size_t key_off = 0, val_off = 0;
    const auto head = detail::trim(sv.substr(0, eq), &key_off);
    const auto value = detail::trim(sv.substr(eq + 1), &val_off);
    const int val_col = static_cast<int>(indent + eq + 1 + val_off) + 1;
    if (value.empty()) throw ParseError("missing value", lineno, val_col);

    auto words = [](std::string_view s) {
      std::vector<std::string_view> out;
      std::size_t i = 0;
      while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        const std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
      }
      return out;
    };

    if (head == "criteria_matrix") {
      if (have_matrix)
        throw ParseError("repeated criteria_matrix", lineno, col);
      spec.criteria_matrix_path = std::string(value);
      have_matrix = true;
      continue;
    }
    const auto head_words = words(head);
    if (head_words.size() != 2 || head_words[0] != "criterion")
      throw ParseError("expected 'criteria_matrix = ...' or 'criterion <name> = ...'",
                       lineno, col);
    DecisionSpecCriterion c;
    c.name = std::string(head_words[1]);
    for (const auto& prev : spec.criteria)
      if (prev.name == c.name)
        throw ParseError("repeated criterion '" + c.name + "'", lineno, col);

    const auto value_words = words(value);
    if (value_words.size() == 2 && value_words[0] == "judgment") {
      c.is_judgment = true;
      c.matrix_path = std::string(value_words[1]);
    } else if (value_words.size() == 3 && value_words[0] == "measured") {
      if (value_words[1] == "benefit")
        c.direction = Direction::benefit;
      else if (value_words[1] == "cost")
        c.direction = Direction::cost;
      else
        throw ParseError("direction must be benefit or cost, got '" +
                             std::string(value_words[1]) + "'",
                         lineno, val_col);
      if (!is_metric_key(value_words[2]))
        throw ParseError("unknown metric key '" + std::string(value_words[2]) +
                             "'",
                         lineno, val_col);
      c.metric_key = std::string(value_words[2]);
    } else {
      throw ParseError(
          "expected 'judgment <path>' or 'measured benefit|cost <metric-key>'",
          lineno, val_col);
    }
    spec.criteria.push_back(std::move(c));
  }
  if (!have_matrix)
    throw ParseError("missing 'criteria_matrix = <path>' line", 1, 1);
  if (spec.criteria.empty())
    throw ParseError("no criteria defined", 1, 1);
  return spec;
}

inline DecisionSpec parse_decision_spec(const std::string& text) {
  std::istringstream in(text);
  return parse_decision_spec(in);
}

}  // namespace cognate
