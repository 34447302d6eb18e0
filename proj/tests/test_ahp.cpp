#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ahp_oracles.hpp"
#include "cognate/cognate.hpp"

using namespace cognate;

namespace {

Rational r(std::int64_t n, std::int64_t d = 1) { return Rational::of(n, d); }

// w = (4, 2, 1)/7 exactly
ComparisonMatrix consistent3() {
  return ComparisonMatrix{{{r(1), r(2), r(4)}, {r(1, 2), r(1), r(2)}, {r(1, 4), r(1, 2), r(1)}}};
}

// w = (6, 4, 3, 2, 2)/17; every ratio lands on the judgment scale
ComparisonMatrix consistent5() {
  const std::vector<std::int64_t> w{6, 4, 3, 2, 2};
  std::vector<std::vector<Rational>> e(5, std::vector<Rational>(5, {1, 1}));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) e[i][j] = Rational::of(w[i], w[j]);
  return ComparisonMatrix(std::move(e));
}

}  // namespace

TEST_CASE("rationals normalize and multiply exactly", "[ahp]") {
  REQUIRE(Rational::of(4, 8) == Rational{1, 2});
  REQUIRE(Rational::of(3, -6) == Rational{-1, 2});
  REQUIRE(Rational::of(2, 3) * Rational::of(3, 2) == Rational{1, 1});
  REQUIRE(Rational::of(6, 4) * Rational::of(2, 9) == Rational{1, 3});
  REQUIRE_THROWS_AS(Rational::of(1, 0), NumericError);
  REQUIRE(Rational::of(1, 3).value() == Catch::Approx(1.0 / 3.0));
}

TEST_CASE("rational entries parse in three notations", "[ahp]") {
  REQUIRE(parse_rational("3", 1, 1) == Rational{3, 1});
  REQUIRE(parse_rational("0.25", 1, 1) == Rational{1, 4});
  REQUIRE(parse_rational("2.5", 1, 1) == Rational{5, 2});
  REQUIRE(parse_rational(".5", 1, 1) == Rational{1, 2});
  REQUIRE(parse_rational("1/3", 1, 1) == Rational{1, 3});
  REQUIRE(parse_rational("6/4", 1, 1) == Rational{3, 2});

  REQUIRE_THROWS_AS(parse_rational("", 1, 1), ParseError);
  REQUIRE_THROWS_AS(parse_rational("x", 1, 1), ParseError);
  REQUIRE_THROWS_AS(parse_rational("1/0", 1, 1), ParseError);
  REQUIRE_THROWS_AS(parse_rational("3.", 1, 1), ParseError);
  REQUIRE_THROWS_AS(parse_rational("-2", 1, 1), ParseError);
  REQUIRE_THROWS_AS(parse_rational("12345678901234567890", 1, 1), ParseError);
}

TEST_CASE("comparison matrices are validated exactly", "[ahp]") {
  REQUIRE(consistent3().dimension() == 3);
  REQUIRE(consistent3().value(0, 2) == Catch::Approx(4.0));

  REQUIRE_THROWS_AS(ComparisonMatrix{{}}, DimensionError);
  REQUIRE_THROWS_AS(ComparisonMatrix({{r(1), r(2)}, {r(1, 2)}}), DimensionError);
  // diagonal must be 1
  REQUIRE_THROWS_AS(ComparisonMatrix({{r(2)}}), std::invalid_argument);
  // 0.5 * 3 != 1: reciprocity is checked exactly, not within a tolerance
  REQUIRE_THROWS_AS(ComparisonMatrix({{r(1), r(1, 2)}, {r(3), r(1)}}),
                    std::invalid_argument);
  // outside the 1/9..9 scale
  REQUIRE_THROWS_AS(ComparisonMatrix({{r(1), r(10)}, {r(1, 10), r(1)}}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(ComparisonMatrix({{r(1), r(0)}, {r(0), r(1)}}),
                    std::invalid_argument);
  // 18/2 reduces onto the scale, so it passes
  REQUIRE_NOTHROW(ComparisonMatrix({{r(1), r(18, 2)}, {r(2, 18), r(1)}}));
}

TEST_CASE("consistent matrices reproduce their weight vector", "[ahp]") {
  const auto pv3 = priority_vector(consistent3());
  REQUIRE(pv3.weights[0] == Catch::Approx(4.0 / 7.0).margin(1e-10));
  REQUIRE(pv3.weights[1] == Catch::Approx(2.0 / 7.0).margin(1e-10));
  REQUIRE(pv3.weights[2] == Catch::Approx(1.0 / 7.0).margin(1e-10));
  REQUIRE(pv3.lambda_max == Catch::Approx(3.0).margin(1e-10));
  REQUIRE(pv3.consistency_ratio < 1e-10);

  const auto pv5 = priority_vector(consistent5());
  const double expect[] = {6.0 / 17, 4.0 / 17, 3.0 / 17, 2.0 / 17, 2.0 / 17};
  for (std::size_t i = 0; i < 5; ++i)
    REQUIRE(pv5.weights[i] == Catch::Approx(expect[i]).margin(1e-10));
  REQUIRE(pv5.lambda_max == Catch::Approx(5.0).margin(1e-10));
  REQUIRE(pv5.consistency_ratio < 1e-10);
}

TEST_CASE("a cyclic judgment is flagged as inconsistent", "[ahp]") {
  const ComparisonMatrix cyclic(
      {{r(1), r(9), r(1, 9)}, {r(1, 9), r(1), r(9)}, {r(9), r(1, 9), r(1)}});
  const auto pv = priority_vector(cyclic);
  // circulant: the all-ones vector is principal, lambda = 1 + 9 + 1/9
  for (const auto w : pv.weights) REQUIRE(w == Catch::Approx(1.0 / 3.0).margin(1e-10));
  REQUIRE(pv.lambda_max == Catch::Approx(91.0 / 9.0).margin(1e-9));
  REQUIRE(pv.consistency_index == Catch::Approx((91.0 / 9.0 - 3) / 2).margin(1e-9));
  REQUIRE(pv.consistency_ratio > kConsistencyRatioLimit);
}

TEST_CASE("power iteration agrees with a direct eigensolver", "[ahp]") {
  Rng rng(0xe16e);
  for (int rep = 0; rep < 60; ++rep) {
    const int k = 3 + static_cast<int>(rng.below(6));
    const auto m = oracles::random_comparison_matrix(k, rng);
    const auto pv = priority_vector(m);
    const auto ref = oracles::eigen_priority(m);
    for (std::size_t i = 0; i < ref.size(); ++i)
      REQUIRE(pv.weights[i] == Catch::Approx(ref[i]).margin(1e-8));
    REQUIRE(pv.lambda_max == Catch::Approx(oracles::eigen_lambda_max(m)).margin(1e-8));
    REQUIRE(pv.lambda_max >= static_cast<double>(k) - 1e-9);  // Perron bound
  }
}

TEST_CASE("the random-index table is pinned", "[ahp]") {
  const double expect[] = {0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49};
  for (int k = 1; k <= 10; ++k) REQUIRE(random_index(k) == expect[k - 1]);
  REQUIRE_THROWS_AS(random_index(0), DimensionError);
  REQUIRE_THROWS_AS(random_index(11), CapacityError);

  REQUIRE(consistency_ratio(0.5, 2) == 0.0);  // k <= 2 is consistent by construction
  REQUIRE(consistency_ratio(0.29, 3) == Catch::Approx(0.5));
}

TEST_CASE("measured values normalize by direction", "[ahp]") {
  REQUIRE(score_measured({1, 3}, Direction::benefit) ==
          std::vector<double>{0.25, 0.75});
  REQUIRE(score_measured({0, 0, 0}, Direction::benefit) ==
          std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3});

  const auto cost = score_measured({1, 4}, Direction::cost);
  REQUIRE(cost[0] == Catch::Approx(0.8));
  REQUIRE(cost[1] == Catch::Approx(0.2));

  // a zero cost shifts all values by one before inverting
  const auto shifted = score_measured({0, 1}, Direction::cost);
  REQUIRE(shifted[0] == Catch::Approx(2.0 / 3));
  REQUIRE(shifted[1] == Catch::Approx(1.0 / 3));

  REQUIRE_THROWS_AS(score_measured({}, Direction::benefit), std::invalid_argument);
  REQUIRE_THROWS_AS(score_measured({-1.0}, Direction::benefit), std::invalid_argument);
  REQUIRE_THROWS_AS(score_measured({std::nan("")}, Direction::cost),
                    std::invalid_argument);
}

TEST_CASE("synthesis weights criteria and ranks alternatives", "[ahp]") {
  DecisionProblem p{
      ComparisonMatrix({{r(1), r(2)}, {r(1, 2), r(1)}}),
      {"alpha", "beta"},
      {Criterion{"quality", std::nullopt, Direction::benefit, {3, 1}},
       Criterion{"price", std::nullopt, Direction::cost, {1, 1}}}};
  const auto s = synthesize(p);
  REQUIRE(s.criteria_priorities.weights[0] == Catch::Approx(2.0 / 3).margin(1e-10));
  REQUIRE(s.criteria.size() == 2);
  REQUIRE(s.criteria[0].scores == std::vector<double>{0.75, 0.25});
  REQUIRE(s.ranking[0].label == "alpha");
  REQUIRE(s.ranking[0].score == Catch::Approx(2.0 / 3 * 0.75 + 1.0 / 3 * 0.5));
  REQUIRE(s.ranking[1].score == Catch::Approx(2.0 / 3 * 0.25 + 1.0 / 3 * 0.5));
  REQUIRE(s.elected().index == 0);

  // judgment criteria carry their own priority vector
  DecisionProblem q{ComparisonMatrix({{r(1)}}),
                    {"a", "b", "c"},
                    {Criterion{"expert", consistent3(), std::nullopt, {}}}};
  const auto sq = synthesize(q);
  REQUIRE(sq.criteria[0].judgment_priorities.has_value());
  REQUIRE(sq.ranking[0].label == "a");
  REQUIRE(sq.ranking[0].score == Catch::Approx(4.0 / 7).margin(1e-10));
}

TEST_CASE("equal scores keep the original order", "[ahp]") {
  DecisionProblem p{ComparisonMatrix({{r(1)}}),
                    {"first", "second"},
                    {Criterion{"flat", std::nullopt, Direction::benefit, {2, 2}}}};
  const auto s = synthesize(p);
  REQUIRE(s.ranking[0].index == 0);
  REQUIRE(s.ranking[1].index == 1);
  REQUIRE(s.ranking[0].score == Catch::Approx(s.ranking[1].score));
}

TEST_CASE("the election is invariant under positive scaling of benefits", "[ahp]") {
  Rng rng(0x5ca1e);
  for (int rep = 0; rep < 30; ++rep) {
    const int n_alt = 2 + static_cast<int>(rng.below(4));
    std::vector<std::string> alts;
    for (int j = 0; j < n_alt; ++j) alts.push_back("m" + std::to_string(j));
    std::vector<double> values;
    for (int j = 0; j < n_alt; ++j)
      values.push_back(static_cast<double>(1 + rng.below(50)));

    DecisionProblem p{oracles::random_comparison_matrix(2, rng),
                      alts,
                      {Criterion{"a", std::nullopt, Direction::benefit, values},
                       Criterion{"b", std::nullopt, Direction::benefit,
                                 std::vector<double>(values.rbegin(), values.rend())}}};
    const auto before = synthesize(p).elected().index;

    const double scale = 0.5 + static_cast<double>(rng.below(1000)) / 100.0;
    for (auto& v : p.criteria[0].values) v *= scale;
    REQUIRE(synthesize(p).elected().index == before);
  }
}

TEST_CASE("synthesis validates its inputs", "[ahp]") {
  const ComparisonMatrix unit({{r(1)}});
  REQUIRE_THROWS_AS(synthesize({unit, {"a"}, {}}), std::invalid_argument);
  REQUIRE_THROWS_AS(
      synthesize({unit, {}, {Criterion{"c", std::nullopt, Direction::benefit, {1}}}}),
      std::invalid_argument);
  // one criterion declared, two in the matrix
  REQUIRE_THROWS_AS(
      synthesize({ComparisonMatrix({{r(1), r(1)}, {r(1), r(1)}}),
                  {"a"},
                  {Criterion{"c", std::nullopt, Direction::benefit, {1}}}}),
      DimensionError);
  // both judgment and measured at once
  REQUIRE_THROWS_AS(
      synthesize({unit, {"a"}, {Criterion{"c", unit, Direction::benefit, {1}}}}),
      std::invalid_argument);
  // neither
  REQUIRE_THROWS_AS(
      synthesize({unit, {"a"}, {Criterion{"c", std::nullopt, std::nullopt, {}}}}),
      std::invalid_argument);
  // wrong value count
  REQUIRE_THROWS_AS(
      synthesize({unit, {"a", "b"},
                  {Criterion{"c", std::nullopt, Direction::benefit, {1}},
                   Criterion{"d", std::nullopt, Direction::cost, {1, 2}}}}),
      DimensionError);
  // judgment dimension vs alternatives
  REQUIRE_THROWS_AS(
      synthesize({unit, {"a", "b"}, {Criterion{"c", consistent3(), std::nullopt, {}}}}),
      DimensionError);
}

TEST_CASE("metric keys address report fields", "[ahp]") {
  PropertyReport rep;
  rep.n = 4;
  rep.weight = 6;
  rep.nonlinearity = 6;
  rep.algebraic_degree = 2;
  rep.absolute_indicator = 0;
  rep.sum_of_squares = 256;
  rep.ci_order = 0;
  rep.algebraic_immunity = 2;
  rep.linear_structures = {4, 8};

  REQUIRE(metric_value(rep, "weight") == 6.0);
  REQUIRE(metric_value(rep, "nonlinearity") == 6.0);
  REQUIRE(metric_value(rep, "algebraic_degree") == 2.0);
  REQUIRE(metric_value(rep, "absolute_indicator") == 0.0);
  REQUIRE(metric_value(rep, "sum_of_squares") == 256.0);
  REQUIRE(metric_value(rep, "ci_order") == 0.0);
  REQUIRE(metric_value(rep, "algebraic_immunity") == 2.0);
  REQUIRE(metric_value(rep, "linear_structure_count") == 2.0);
  REQUIRE_THROWS_AS(metric_value(rep, "resiliency_order"), NumericError);
  rep.resiliency_order = 1;
  REQUIRE(metric_value(rep, "resiliency_order") == 1.0);
  rep.algebraic_immunity.reset();
  REQUIRE_THROWS_AS(metric_value(rep, "algebraic_immunity"), NumericError);
  REQUIRE_THROWS_AS(metric_value(rep, "entropy"), std::invalid_argument);

  for (const auto& key : metric_keys()) REQUIRE(is_metric_key(key));
  REQUIRE_FALSE(is_metric_key("entropy"));
  REQUIRE(metric_keys().size() == 9);
}

TEST_CASE("matrix files parse all entry notations", "[ahp]") {
  const auto m = parse_matrix(
      "# pairwise judgments\n"
      "1    2   4\n"
      "0.5  1   2\n"
      "1/4  1/2 1\n");
  REQUIRE(m.dimension() == 3);
  REQUIRE(m.at(1, 0) == Rational{1, 2});
  REQUIRE(m.at(2, 0) == Rational{1, 4});

  REQUIRE_THROWS_AS(parse_matrix(""), ParseError);
  try {
    parse_matrix("1 2\n1/2 1 3\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    REQUIRE(std::string(e.what()).find("row 2") != std::string::npos);
    REQUIRE(e.line == 2);
  }
  REQUIRE_THROWS_AS(parse_matrix("1 ?\n2 1\n"), ParseError);
  // semantic violations surface as parse errors with the matrix position
  REQUIRE_THROWS_AS(parse_matrix("1 3\n1/2 1\n"), ParseError);
  REQUIRE_THROWS_AS(parse_matrix("2\n"), ParseError);
}

TEST_CASE("decision files bind criteria to matrices or metrics", "[ahp]") {
  const auto spec = parse_decision_spec(
      "# selection setup\n"
      "criteria_matrix = weights.txt\n"
      "criterion robustness = judgment robustness.txt\n"
      "criterion strength = measured benefit nonlinearity\n"
      "criterion leakage = measured cost absolute_indicator\n");
  REQUIRE(spec.criteria_matrix_path == "weights.txt");
  REQUIRE(spec.criteria.size() == 3);
  REQUIRE(spec.criteria[0].is_judgment);
  REQUIRE(spec.criteria[0].matrix_path == "robustness.txt");
  REQUIRE_FALSE(spec.criteria[1].is_judgment);
  REQUIRE(spec.criteria[1].direction == Direction::benefit);
  REQUIRE(spec.criteria[1].metric_key == "nonlinearity");
  REQUIRE(spec.criteria[2].direction == Direction::cost);

  REQUIRE_THROWS_AS(parse_decision_spec(""), ParseError);
  REQUIRE_THROWS_AS(parse_decision_spec("criteria_matrix = a\n"), ParseError);
  REQUIRE_THROWS_AS(
      parse_decision_spec("criterion x = measured benefit nonlinearity\n"), ParseError);
  REQUIRE_THROWS_AS(parse_decision_spec("criteria_matrix = a\ncriteria_matrix = b\n"
                                        "criterion x = measured benefit weight\n"),
                    ParseError);
  REQUIRE_THROWS_AS(
      parse_decision_spec("criteria_matrix = a\ncriterion x = judgment j.txt\n"
                          "criterion x = measured benefit weight\n"),
      ParseError);
  REQUIRE_THROWS_AS(
      parse_decision_spec("criteria_matrix = a\ncriterion x = measured maybe weight\n"),
      ParseError);
  REQUIRE_THROWS_AS(
      parse_decision_spec("criteria_matrix = a\ncriterion x = measured benefit entropy\n"),
      ParseError);
  REQUIRE_THROWS_AS(parse_decision_spec("criteria_matrix = a\nstray line\n"), ParseError);
}
