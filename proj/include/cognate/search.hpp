#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cognate/constraints.hpp"
#include "cognate/errors.hpp"
#include "cognate/properties.hpp"
#include "cognate/rng.hpp"
#include "cognate/transforms.hpp"
#include "cognate/truth_table.hpp"

namespace cognate {

/// Hill-climbing parameters. sample_size == 0 scores every candidate move
/// each iteration; k > 0 scores k random moves instead.
struct SearchConfig {
  std::uint64_t seed = 0;
  int max_iterations = 10'000;
  int max_restarts = 20;
  int sample_size = 0;
};

struct SearchResult {
  TruthTable table;
  PropertyReport report;
  int restart = 0;    // restart index that produced the table
  int iteration = 0;  // iterations consumed within that restart
};

/// Budget exhausted, or the target is provably out of reach; carries the
/// best function seen and its report.
class SearchFailure : public std::runtime_error {
 public:
  SearchFailure(const std::string& what, TruthTable best, PropertyReport report)
      : std::runtime_error(what),
        best_(std::move(best)),
        report_(std::move(report)) {}

  const TruthTable& best() const { return best_; }
  const PropertyReport& best_report() const { return report_; }

 private:
  TruthTable best_;
  PropertyReport report_;
};

namespace detail {

// Lexicographic move objective. The correlation-immunity deficit (sum of
// |W(a)| over nonzero masks of weight <= min_ci_order) leads only when that
// constraint is active, so plain searches keep nonlinearity monotone.
struct Objective {
  std::int64_t ci_deficit = 0;
  int nonlinearity = 0;
  int max_multiplicity = 0;
  int absolute_indicator = 0;
};

inline bool better(const Objective& a, const Objective& b) {
  if (a.ci_deficit != b.ci_deficit) return a.ci_deficit < b.ci_deficit;
  if (a.nonlinearity != b.nonlinearity) return a.nonlinearity > b.nonlinearity;
  if (a.max_multiplicity != b.max_multiplicity)
    return a.max_multiplicity < b.max_multiplicity;
  return a.absolute_indicator < b.absolute_indicator;
}

struct ClimbState {
  TruthTable f;
  std::vector<std::int32_t> w;
  std::vector<std::int32_t> ac;

  explicit ClimbState(TruthTable t) : f(std::move(t)) {
    WalshSpectrum ws = walsh_spectrum(f);
    ac = autocorrelation(ws).values;
    w = std::move(ws.values);
  }

  int sign(std::uint32_t x) const { return f.get(x) ? -1 : 1; }

  void apply_flip(std::uint32_t x) {
    const bool old_bit = f.get(x);
    for (std::uint32_t d = 1; d < ac.size(); ++d)
      ac[d] -= 4 * sign(x) * sign(x ^ d);
    walsh_flip_inplace(w, x, old_bit);
    f.flip(x);
  }

#ifndef NDEBUG
  void check_consistency() const {
    assert(w == walsh_spectrum(f).values);
    assert(ac == autocorrelation(f).values);
  }
#endif
};

inline Objective state_objective(const ClimbState& s,
                                 const std::vector<std::uint32_t>& ci_masks) {
  Objective o;
  std::int32_t max_abs = 0;
  for (const auto v : s.w) {
    const std::int32_t a = v < 0 ? -v : v;
    if (a > max_abs) {
      max_abs = a;
      o.max_multiplicity = 1;
    } else if (a == max_abs) {
      ++o.max_multiplicity;
    }
  }
  o.nonlinearity =
      static_cast<int>((s.w.size() >> 1) - static_cast<std::uint32_t>(max_abs) / 2);
  for (std::uint32_t d = 1; d < s.ac.size(); ++d) {
    const std::int32_t a = s.ac[d] < 0 ? -s.ac[d] : s.ac[d];
    if (a > o.absolute_indicator) o.absolute_indicator = a;
  }
  for (const auto m : ci_masks)
    o.ci_deficit += s.w[m] < 0 ? -s.w[m] : s.w[m];
  return o;
}

// Objective after hypothetically flipping x, without touching the state.
inline Objective flip_objective(const ClimbState& s, std::uint32_t x,
                                const std::vector<std::uint32_t>& ci_masks) {
  Objective o;
  const std::int32_t step = s.f.get(x) ? 2 : -2;
  std::int32_t max_abs = 0;
  for (std::uint32_t a = 0; a < s.w.size(); ++a) {
    const std::int32_t v =
        s.w[a] + ((std::popcount(a & x) & 1) ? -step : step);
    const std::int32_t m = v < 0 ? -v : v;
    if (m > max_abs) {
      max_abs = m;
      o.max_multiplicity = 1;
    } else if (m == max_abs) {
      ++o.max_multiplicity;
    }
  }
  o.nonlinearity =
      static_cast<int>((s.w.size() >> 1) - static_cast<std::uint32_t>(max_abs) / 2);
  for (std::uint32_t d = 1; d < s.ac.size(); ++d) {
    const std::int32_t v = s.ac[d] - 4 * s.sign(x) * s.sign(x ^ d);
    const std::int32_t m = v < 0 ? -v : v;
    if (m > o.absolute_indicator) o.absolute_indicator = m;
  }
  for (const auto mask : ci_masks) {
    const std::int32_t v =
        s.w[mask] + ((std::popcount(mask & x) & 1) ? -step : step);
    o.ci_deficit += v < 0 ? -v : v;
  }
  return o;
}

// Objective after hypothetically swapping a one-entry i and a zero-entry j.
inline Objective swap_objective(const ClimbState& s, std::uint32_t i,
                                std::uint32_t j,
                                const std::vector<std::uint32_t>& ci_masks) {
  assert(s.f.get(i) && !s.f.get(j));
  Objective o;
  auto new_w = [&](std::uint32_t a) {
    const std::int32_t di = (std::popcount(a & i) & 1) ? -2 : 2;
    const std::int32_t dj = (std::popcount(a & j) & 1) ? 2 : -2;
    return s.w[a] + di + dj;
  };
  std::int32_t max_abs = 0;
  for (std::uint32_t a = 0; a < s.w.size(); ++a) {
    const std::int32_t v = new_w(a);
    const std::int32_t m = v < 0 ? -v : v;
    if (m > max_abs) {
      max_abs = m;
      o.max_multiplicity = 1;
    } else if (m == max_abs) {
      ++o.max_multiplicity;
    }
  }
  o.nonlinearity =
      static_cast<int>((s.w.size() >> 1) - static_cast<std::uint32_t>(max_abs) / 2);
  const std::uint32_t fixed = i ^ j;
  for (std::uint32_t d = 1; d < s.ac.size(); ++d) {
    std::int32_t v = s.ac[d];
    if (d != fixed) v += 4 * s.sign(i ^ d) - 4 * s.sign(j ^ d);
    const std::int32_t m = v < 0 ? -v : v;
    if (m > o.absolute_indicator) o.absolute_indicator = m;
  }
  for (const auto mask : ci_masks) o.ci_deficit += std::abs(new_w(mask));
  return o;
}

inline TruthTable random_table(int n, bool balanced, Rng& rng) {
  TruthTable f(n);
  if (balanced) {
    std::vector<std::uint32_t> idx(f.size());
    for (std::uint32_t x = 0; x < f.size(); ++x) idx[x] = x;
    rng.shuffle(idx);
    for (std::uint32_t k = 0; k < f.size() / 2; ++k) f.set(idx[k], true);
  } else {
    for (std::uint32_t x = 0; x < f.size(); ++x) f.set(x, rng.bit());
  }
  return f;
}

// Cheap per-iteration screen from the incremental state; true means the
// expensive full classification is worth running.
inline bool cheap_pass(const ClimbState& s, const ConstraintSystem& cs,
                       const Objective& o) {
  if (cs.require_balanced && s.w[0] != 0) return false;
  if (cs.min_nonlinearity && o.nonlinearity < *cs.min_nonlinearity)
    return false;
  if (cs.max_absolute_indicator &&
      o.absolute_indicator > *cs.max_absolute_indicator)
    return false;
  if (cs.min_ci_order && o.ci_deficit != 0) return false;
  if (cs.max_sum_of_squares) {
    std::int64_t sos = 0;
    for (const auto v : s.ac) sos += std::int64_t{v} * v;
    if (sos > *cs.max_sum_of_squares) return false;
  }
  return true;
}

}  // namespace detail

/// Steepest-ascent hill climbing under the restriction system: per
/// iteration every candidate move (single flip, or one<->zero swap when
/// balancedness must hold) is scored and the best strictly improving one is
/// taken; local optima trigger a restart with a fresh random start. Each
/// restart r runs on its own stream seeded with mix_seed(cfg.seed, r), so
/// results depend only on (cs, cfg).
inline SearchResult gradient_descent_search(const ConstraintSystem& cs,
                                            const SearchConfig& cfg) {
  if (cs.n < 1)
    throw DimensionError("the constraint system must fix n for a search");
  if (cfg.max_iterations < 1 || cfg.max_restarts < 1)
    throw std::invalid_argument("max_iterations and max_restarts must be >= 1");
  if (cfg.sample_size < 0)
    throw std::invalid_argument("sample_size must be nonnegative");

  const FeasibilityReport feas = check_feasibility(cs);
  if (!feas.ok()) {
    Rng rng(mix_seed(cfg.seed, 0));
    TruthTable f = detail::random_table(cs.n, cs.require_balanced, rng);
    PropertyReport rep = classify(f);
    throw SearchFailure(feas.errors.front(), std::move(f), std::move(rep));
  }

  std::vector<std::uint32_t> ci_masks;
  if (cs.min_ci_order) {
    for (std::uint32_t a = 1; a < (std::uint32_t{1} << cs.n); ++a)
      if (std::popcount(a) <= *cs.min_ci_order) ci_masks.push_back(a);
  }

  bool have_best = false;
  detail::Objective best_obj;
  TruthTable best_f;

  for (int restart = 0; restart < cfg.max_restarts; ++restart) {
    Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(restart)));
    detail::ClimbState state(
        detail::random_table(cs.n, cs.require_balanced, rng));
    const std::uint32_t size = state.f.size();

    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
      detail::Objective current = detail::state_objective(state, ci_masks);
      if (detail::cheap_pass(state, cs, current)) {
        PropertyReport rep = classify(state.f);
        if (evaluate_constraints(rep, cs).pass)
          return {std::move(state.f), std::move(rep), restart, iter};
      }

      // pick the best strictly improving move; ties keep the earliest
      bool found = false;
      bool best_is_swap = false;
      std::uint32_t move_x = 0, move_i = 0, move_j = 0;
      detail::Objective move_obj = current;
      auto consider_flip = [&](std::uint32_t x) {
        const detail::Objective o = detail::flip_objective(state, x, ci_masks);
        if (detail::better(o, move_obj)) {
          move_obj = o;
          move_x = x;
          best_is_swap = false;
          found = true;
        }
      };
      auto consider_swap = [&](std::uint32_t i, std::uint32_t j) {
        const detail::Objective o =
            detail::swap_objective(state, i, j, ci_masks);
        if (detail::better(o, move_obj)) {
          move_obj = o;
          move_i = i;
          move_j = j;
          best_is_swap = true;
          found = true;
        }
      };

      if (cs.require_balanced) {
        std::vector<std::uint32_t> ones, zeros;
        ones.reserve(size / 2);
        zeros.reserve(size / 2);
        for (std::uint32_t x = 0; x < size; ++x)
          (state.f.get(x) ? ones : zeros).push_back(x);
        if (cfg.sample_size == 0) {
          for (const auto i : ones)
            for (const auto j : zeros) consider_swap(i, j);
        } else {
          for (int k = 0; k < cfg.sample_size; ++k)
            consider_swap(ones[rng.below(ones.size())],
                          zeros[rng.below(zeros.size())]);
        }
      } else if (cfg.sample_size == 0) {
        for (std::uint32_t x = 0; x < size; ++x) consider_flip(x);
      } else {
        for (int k = 0; k < cfg.sample_size; ++k)
          consider_flip(static_cast<std::uint32_t>(rng.below(size)));
      }

      if (!found) break;  // local optimum
      if (best_is_swap) {
        state.apply_flip(move_i);
        state.apply_flip(move_j);
      } else {
        state.apply_flip(move_x);
      }
#ifndef NDEBUG
      state.check_consistency();
      assert(!cs.require_balanced || state.f.weight() == size / 2);
#endif
    }

    const detail::Objective final_obj = detail::state_objective(state, ci_masks);
    if (!have_best || detail::better(final_obj, best_obj)) {
      have_best = true;
      best_obj = final_obj;
      best_f = state.f;
    }
  }

  PropertyReport rep = classify(best_f);
  throw SearchFailure("search budget exhausted (" +
                          std::to_string(cfg.max_restarts) + " restarts x " +
                          std::to_string(cfg.max_iterations) + " iterations)",
                      std::move(best_f), std::move(rep));
}

struct ComponentCheck {
  bool pass = true;
  std::vector<std::uint32_t> failing_combinations;
};

/// Evaluates cs against every nonzero linear combination of the components.
inline ComponentCheck check_component_constraints(
    const std::vector<TruthTable>& components, const ConstraintSystem& cs) {
  if (components.empty()) throw DimensionError("component list is empty");
  const int n = components[0].vars();
  for (const auto& f : components)
    if (f.vars() != n)
      throw DimensionError("components must share the variable count");
  if (static_cast<int>(components.size()) > n)
    throw DimensionError("component count exceeds n");
  ComponentCheck out;
  const auto m = static_cast<std::uint32_t>(components.size());
  for (std::uint32_t c = 1; c < (std::uint32_t{1} << m); ++c) {
    const TruthTable g = component_combination(components, c);
    if (!evaluate_constraints(g, cs).pass) {
      out.pass = false;
      out.failing_combinations.push_back(c);
    }
  }
  return out;
}

}  // namespace cognate
