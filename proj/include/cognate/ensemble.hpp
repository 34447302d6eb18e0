#pragma once

#include <cstdint>
#include <cstdio>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cognate/constraints.hpp"
#include "cognate/errors.hpp"
#include "cognate/properties.hpp"
#include "cognate/truth_table.hpp"

namespace cognate {

/// Exact rational Hamming proximity d_H(f, g) / 2^n.
struct CognateProximity {
  std::uint32_t hamming_distance = 0;
  std::uint32_t denominator = 1;

  friend bool operator==(const CognateProximity&,
                         const CognateProximity&) = default;
};

inline CognateProximity cognate_proximity(const TruthTable& f,
                                          const TruthTable& g) {
  if (f.vars() != g.vars())
    throw DimensionError("proximity requires equal variable counts, got n=" +
                         std::to_string(f.vars()) + " and n=" +
                         std::to_string(g.vars()));
  return {(f ^ g).weight(), f.size()};
}

enum class EnsembleStage { initial, working };

struct CognateEnsemble {
  TruthTable nominal;
  std::vector<TruthTable> members;
  EnsembleStage stage = EnsembleStage::initial;
};

/// The 2^{n+1} functions nearest the nominal: for each table index i in
/// ascending order, the nominal with entry i flipped, then the complement of
/// that function. For n = 1 the four entries cover only two distinct tables
/// (the complement of a flip is the other flip); the sequence is kept as-is.
inline CognateEnsemble initial_ensemble(const TruthTable& nominal) {
  CognateEnsemble e{nominal, {}, EnsembleStage::initial};
  e.members.reserve(std::size_t{2} * nominal.size());
  for (std::uint32_t i = 0; i < nominal.size(); ++i) {
    TruthTable g = nominal.flipped(i);
    e.members.push_back(g);
    e.members.push_back(g.complement());
  }
  return e;
}

struct MemberVerdict {
  CognateProximity proximity;  // to the nominal
  PropertyReport report;
  ConstraintCheck check;
};

struct FilterResult {
  CognateEnsemble ensemble;  // working stage, passing members in order
  PropertyReport nominal_report;
  ConstraintCheck nominal_check;
  std::vector<MemberVerdict> verdicts;  // one per input member, same order

  /// Binding-constraint line per rejected member.
  std::vector<std::string> rejection_diagnostics() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
      const auto& v = verdicts[i];
      if (v.check.pass) continue;
      const auto& first = v.check.violations.front();
      out.push_back("member " + std::to_string(i) + ": " + first.constraint +
                    " requires " + first.required + ", got " + first.actual);
    }
    return out;
  }
};

/// Keeps exactly the members whose classification satisfies cs; the nominal
/// is always evaluated alongside. Filtering an already-working ensemble with
/// the same system changes nothing.
inline FilterResult filter_ensemble(const CognateEnsemble& e,
                                    const ConstraintSystem& cs) {
  if (cs.n != 0 && e.nominal.vars() != cs.n)
    throw DimensionError("constraint system is over n=" + std::to_string(cs.n) +
                         " but the ensemble has n=" +
                         std::to_string(e.nominal.vars()));
  FilterResult r;
  r.ensemble.nominal = e.nominal;
  r.ensemble.stage = EnsembleStage::working;
  r.nominal_report = classify(e.nominal);
  r.nominal_check = evaluate_constraints(r.nominal_report, cs);
  r.verdicts.reserve(e.members.size());
  for (const TruthTable& g : e.members) {
    MemberVerdict v;
    v.proximity = cognate_proximity(g, e.nominal);
    v.report = classify(g);
    v.check = evaluate_constraints(v.report, cs);
    if (v.check.pass) r.ensemble.members.push_back(g);
    r.verdicts.push_back(std::move(v));
  }
  return r;
}

// --- export format ---------------------------------------------------------
//
// One table token per line with a proximity/verdict comment, preceded by a
// header naming the nominal:
//
//   # nominal: 0001
//   1001  # C_gn=1/4 pass=true

struct EnsembleRow {
  TruthTable table;
  CognateProximity proximity;
  bool pass = true;
};

struct ParsedEnsemble {
  TruthTable nominal;
  std::vector<EnsembleRow> rows;
};

inline std::string format_ensemble(const TruthTable& nominal,
                                   const std::vector<EnsembleRow>& rows) {
  std::ostringstream out;
  out << "# nominal: " << format_truth_table(nominal) << '\n';
  for (const auto& row : rows) {
    out << format_truth_table(row.table) << "  # C_gn="
        << row.proximity.hamming_distance << '/' << row.proximity.denominator
        << " pass=" << (row.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

/// Writes the passing members of a filter result.
inline std::string format_ensemble(const FilterResult& r) {
  std::vector<EnsembleRow> rows;
  rows.reserve(r.ensemble.members.size());
  std::size_t k = 0;
  for (const auto& v : r.verdicts)
    if (v.check.pass)
      rows.push_back({r.ensemble.members[k++], v.proximity, true});
  return format_ensemble(r.ensemble.nominal, rows);
}

inline ParsedEnsemble parse_ensemble(std::istream& in) {
  ParsedEnsemble result;
  bool have_nominal = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = line;
    std::size_t indent = 0;
    sv = detail::trim(sv, &indent);
    if (sv.empty()) continue;

    if (!have_nominal) {
      constexpr std::string_view kHeader = "# nominal:";
      if (sv.substr(0, kHeader.size()) != kHeader)
        throw ParseError("expected '# nominal: <table>' header", lineno,
                         static_cast<int>(indent) + 1);
      std::size_t tok_off = 0;
      const auto token = detail::trim(sv.substr(kHeader.size()), &tok_off);
      if (token.empty())
        throw ParseError("missing nominal table", lineno,
                         static_cast<int>(indent + kHeader.size()) + 1);
      result.nominal = parse_truth_table_token(
          token, lineno, static_cast<int>(indent + kHeader.size() + tok_off) + 1);
      have_nominal = true;
      continue;
    }
    if (sv.front() == '#') continue;

    EnsembleRow row;
    const auto hash = sv.find('#');
    std::size_t tok_off = 0;
    const auto token = detail::trim(sv.substr(0, hash), &tok_off);
    row.table = parse_truth_table_token(token, lineno,
                                        static_cast<int>(indent + tok_off) + 1);
    if (row.table.vars() != result.nominal.vars())
      throw ParseError("member has n=" + std::to_string(row.table.vars()) +
                           " but the nominal has n=" +
                           std::to_string(result.nominal.vars()),
                       lineno, static_cast<int>(indent + tok_off) + 1);
    row.proximity = cognate_proximity(row.table, result.nominal);
    if (hash != std::string_view::npos) {
      const std::string comment{sv.substr(hash + 1)};
      const int base_col = static_cast<int>(indent + hash) + 2;
      std::uint32_t d = 0, den = 0;
      char pass_word[8] = {};
      if (std::sscanf(comment.c_str(), " C_gn=%u/%u pass=%7s", &d, &den,
                      pass_word) == 3) {
        const std::string_view pass{pass_word};
        if (pass != "true" && pass != "false")
          throw ParseError("pass must be true or false", lineno, base_col);
        if (d != row.proximity.hamming_distance ||
            den != row.proximity.denominator)
          throw ParseError(
              "stated proximity " + std::to_string(d) + "/" +
                  std::to_string(den) + " does not match the table (" +
                  std::to_string(row.proximity.hamming_distance) + "/" +
                  std::to_string(row.proximity.denominator) + ")",
              lineno, base_col);
        row.pass = pass == "true";
      }
    }
    result.rows.push_back(std::move(row));
  }
  if (!have_nominal)
    throw ParseError("no '# nominal:' header found", 1, 1);
  return result;
}

inline ParsedEnsemble parse_ensemble(const std::string& text) {
  std::istringstream in(text);
  return parse_ensemble(in);
}

}  // namespace cognate
