#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "cognate/errors.hpp"
#include "cognate/transforms.hpp"
#include "cognate/truth_table.hpp"

namespace cognate {

inline int nonlinearity(const WalshSpectrum& w) {
  return (1 << (w.n - 1)) - w.max_abs() / 2;
}

/// Minimum Hamming distance to the affine functions,
/// 2^(n-1) - max|W|/2.
inline int nonlinearity(const TruthTable& f) { return nonlinearity(walsh_spectrum(f)); }

struct Indicators {
  int absolute_indicator = 0;        // max_{d != 0} |ac(d)|
  std::int64_t sum_of_squares = 0;   // sum_d ac(d)^2
};

inline Indicators indicators(const AutocorrelationSpectrum& ac) {
  Indicators ind;
  for (std::size_t d = 0; d < ac.values.size(); ++d) {
    const std::int32_t v = ac.values[d];
    ind.sum_of_squares += static_cast<std::int64_t>(v) * v;
    const std::int32_t a = v < 0 ? -v : v;
    if (d != 0 && a > ind.absolute_indicator) ind.absolute_indicator = a;
  }
  return ind;
}

/// Xiao-Massey: largest m with W(a) = 0 for all 1 <= wt(a) <= m.
/// Constants give n.
inline int correlation_immunity_order(const WalshSpectrum& w) {
  int min_wt = w.n + 1;
  for (std::uint32_t a = 1; a < w.size(); ++a)
    if (w.values[a] != 0) {
      const int wt = std::popcount(a);
      if (wt < min_wt) min_wt = wt;
    }
  return min_wt - 1;
}

inline int correlation_immunity_order(const TruthTable& f) {
  return correlation_immunity_order(walsh_spectrum(f));
}

/// Shifts d != 0 whose derivative f(x) xor f(x xor d) is constant,
/// i.e. |ac(d)| = 2^n. Ascending.
inline std::vector<std::uint32_t> linear_structures(const AutocorrelationSpectrum& ac) {
  const std::int32_t full = std::int32_t{1} << ac.n;
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 1; d < ac.size(); ++d)
    if (ac.values[d] == full || ac.values[d] == -full) out.push_back(d);
  return out;
}

inline std::vector<std::uint32_t> linear_structures(const TruthTable& f) {
  return linear_structures(autocorrelation(f));
}

namespace detail {

// GF(2) column-echelon accumulator over point-evaluation vectors.
// Inserting a column linearly dependent on the ones before it reports
// the dependency instead of growing the basis.
class Gf2Eliminator {
 public:
  explicit Gf2Eliminator(std::size_t rows)
      : words_((rows + 63) / 64), basis_(rows, std::uint32_t(-1)) {}

  // Returns true when col was dependent (reduced to zero).
  bool insert(std::vector<std::uint64_t>& col) {
    for (;;) {
      int pivot = -1;
      for (std::size_t w = 0; w < words_; ++w)
        if (col[w]) {
          pivot = static_cast<int>(64 * w + static_cast<std::size_t>(std::countr_zero(col[w])));
          break;
        }
      if (pivot < 0) return true;
      const std::uint32_t slot = basis_[static_cast<std::size_t>(pivot)];
      if (slot == std::uint32_t(-1)) {
        basis_[static_cast<std::size_t>(pivot)] = static_cast<std::uint32_t>(stored_.size());
        stored_.push_back(col);
        return false;
      }
      const auto& other = stored_[slot];
      for (std::size_t w = 0; w < words_; ++w) col[w] ^= other[w];
    }
  }

 private:
  std::size_t words_;
  std::vector<std::uint32_t> basis_;  // pivot row -> index into stored_
  std::vector<std::vector<std::uint64_t>> stored_;
};

}  // namespace detail

inline constexpr int kAlgebraicImmunityMaxVars = 14;

/// Minimum degree of a nonzero annihilator of f or of f xor 1, found by
/// degree-ascending GF(2) elimination over monomial evaluations on each
/// support. Constants give 0. Guarded to n <= 14.
inline int algebraic_immunity(const TruthTable& f) {
  const int n = f.vars();
  if (n > kAlgebraicImmunityMaxVars)
    throw CapacityError("algebraic immunity is capped at n <= 14, got n = " +
                        std::to_string(n));

  std::vector<std::uint32_t> supp[2];  // [1]: f(x)=1, [0]: f(x)=0
  for (std::uint32_t x = 0; x < f.size(); ++x) supp[f.get(x) ? 1 : 0].push_back(x);

  // g annihilates f iff g vanishes on supp[1]; g annihilates f^1 iff it
  // vanishes on supp[0]. Either empty support means a constant: AI 0.
  if (supp[0].empty() || supp[1].empty()) return 0;

  std::vector<std::vector<std::uint32_t>> masks_by_degree(static_cast<std::size_t>(n) + 1);
  for (std::uint32_t m = 0; m < f.size(); ++m)
    masks_by_degree[static_cast<std::size_t>(std::popcount(m))].push_back(m);

  const int cap = (n + 1) / 2;
  detail::Gf2Eliminator elim[2] = {detail::Gf2Eliminator(supp[0].size()),
                                   detail::Gf2Eliminator(supp[1].size())};
  std::vector<std::uint64_t> col;
  for (int d = 0; d <= cap; ++d)
    for (int side = 0; side < 2; ++side) {
      const auto& pts = supp[static_cast<std::size_t>(side)];
      for (const std::uint32_t m : masks_by_degree[static_cast<std::size_t>(d)]) {
        col.assign((pts.size() + 63) / 64, 0);
        for (std::size_t i = 0; i < pts.size(); ++i)
          if ((pts[i] & m) == m) col[i >> 6] |= std::uint64_t{1} << (i & 63);
        if (elim[side].insert(col)) return d;
      }
    }
  return cap;  // unreachable: monomials up to ceil(n/2) always outnumber one support
}

/// Aggregate cryptographic profile of one function. resiliency_order is
/// present only for balanced functions; algebraic_immunity only within
/// its n <= 14 cap.
struct PropertyReport {
  int n = 0;
  std::uint32_t weight = 0;
  bool balanced = false;
  int nonlinearity = 0;
  int algebraic_degree = 0;
  int absolute_indicator = 0;
  std::int64_t sum_of_squares = 0;
  int ci_order = 0;
  std::optional<int> resiliency_order;
  std::optional<int> algebraic_immunity;
  bool is_bent = false;
  std::vector<std::uint32_t> linear_structures;
};

inline PropertyReport classify(const TruthTable& f) {
  PropertyReport r;
  r.n = f.vars();
  r.weight = f.weight();
  r.balanced = f.is_balanced();

  const WalshSpectrum w = walsh_spectrum(f);
  r.nonlinearity = nonlinearity(w);
  r.ci_order = correlation_immunity_order(w);
  if (r.balanced) r.resiliency_order = r.ci_order;

  // Bent: n even with a flat spectrum |W| = 2^(n/2) everywhere.
  if (r.n % 2 == 0) {
    const std::int32_t flat = std::int32_t{1} << (r.n / 2);
    r.is_bent = true;
    for (const auto v : w.values)
      if (v != flat && v != -flat) {
        r.is_bent = false;
        break;
      }
  }

  const AutocorrelationSpectrum ac = autocorrelation(w);
  const Indicators ind = indicators(ac);
  r.absolute_indicator = ind.absolute_indicator;
  r.sum_of_squares = ind.sum_of_squares;
  r.linear_structures = linear_structures(ac);

  r.algebraic_degree = moebius_transform(f).degree();
  if (r.n <= kAlgebraicImmunityMaxVars) r.algebraic_immunity = algebraic_immunity(f);
  return r;
}

}  // namespace cognate
