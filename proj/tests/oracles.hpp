#pragma once

// Independent reference implementations used to cross-check the library.
// Everything here computes from first principles (defining sums, exhaustive
// scans) and deliberately avoids the fast paths under test.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cognate/rng.hpp"
#include "cognate/truth_table.hpp"

namespace oracles {

using cognate::Rng;
using cognate::TruthTable;

inline int parity(std::uint32_t v) { return std::popcount(v) & 1; }

/// Defining sum, O(4^n): W(a) = sum_x (-1)^(f(x) xor <a,x>).
inline std::vector<std::int32_t> walsh_direct(const TruthTable& f) {
  std::vector<std::int32_t> w(f.size());
  for (std::uint32_t a = 0; a < f.size(); ++a) {
    std::int32_t acc = 0;
    for (std::uint32_t x = 0; x < f.size(); ++x)
      acc += ((static_cast<int>(f.get(x)) ^ parity(a & x)) != 0) ? -1 : 1;
    w[a] = acc;
  }
  return w;
}

/// Subset sum: ANF coefficient of monomial m is XOR of f over x subseteq m.
inline std::vector<bool> anf_direct(const TruthTable& f) {
  std::vector<bool> coeffs(f.size());
  for (std::uint32_t m = 0; m < f.size(); ++m) {
    bool c = false;
    for (std::uint32_t x = 0; x < f.size(); ++x)
      if ((x & ~m) == 0) c ^= f.get(x);
    coeffs[m] = c;
  }
  return coeffs;
}

inline int degree_direct(const TruthTable& f) {
  const auto coeffs = anf_direct(f);
  int deg = 0;
  for (std::uint32_t m = 0; m < coeffs.size(); ++m)
    if (coeffs[m] && std::popcount(m) > deg) deg = std::popcount(m);
  return deg;
}

/// Defining sum: ac(d) = sum_x (-1)^(f(x) xor f(x xor d)).
inline std::vector<std::int32_t> autocorrelation_direct(const TruthTable& f) {
  std::vector<std::int32_t> ac(f.size());
  for (std::uint32_t d = 0; d < f.size(); ++d) {
    std::int32_t acc = 0;
    for (std::uint32_t x = 0; x < f.size(); ++x)
      acc += (f.get(x) != f.get(x ^ d)) ? -1 : 1;
    ac[d] = acc;
  }
  return ac;
}

/// Minimum Hamming distance to the 2^(n+1) affine functions.
inline int nonlinearity_affine(const TruthTable& f) {
  int best = static_cast<int>(f.size());
  for (std::uint32_t a = 0; a < f.size(); ++a) {
    for (int c = 0; c < 2; ++c) {
      int dist = 0;
      for (std::uint32_t x = 0; x < f.size(); ++x)
        if (static_cast<int>(f.get(x)) != (parity(a & x) ^ c)) ++dist;
      if (dist < best) best = dist;
    }
  }
  return best;
}

inline std::vector<std::uint32_t> linear_structures_direct(const TruthTable& f) {
  std::vector<std::uint32_t> ls;
  for (std::uint32_t d = 1; d < f.size(); ++d) {
    const bool first = f.get(0) != f.get(d);
    bool constant = true;
    for (std::uint32_t x = 1; x < f.size() && constant; ++x)
      constant = (f.get(x) != f.get(x ^ d)) == first;
    if (constant) ls.push_back(d);
  }
  return ls;
}

// Compresses the bits of x selected by mask s into a dense index.
inline std::uint32_t extract_bits(std::uint32_t x, std::uint32_t s) {
  std::uint32_t out = 0;
  int k = 0;
  while (s) {
    const std::uint32_t low = s & (~s + 1);
    if (x & low) out |= std::uint32_t{1} << k;
    ++k;
    s &= s - 1;
  }
  return out;
}

/// Correlation immunity by the distributional definition: order m means
/// fixing any m variables leaves the one-count of the subfunction the same
/// for every assignment.
inline int ci_order_counting(const TruthTable& f) {
  const int n = f.vars();
  for (int m = 1; m <= n; ++m) {
    for (std::uint32_t s = 1; s < f.size(); ++s) {
      if (std::popcount(s) != m) continue;
      std::vector<std::int64_t> count(std::size_t{1} << m, 0);
      for (std::uint32_t x = 0; x < f.size(); ++x)
        if (f.get(x)) ++count[extract_bits(x, s)];
      for (const auto c : count)
        if (c != count[0]) return m - 1;
    }
  }
  return n;
}

/// Exhaustive annihilator search for n <= 4: scans every nonzero function g
/// (via its ANF mask) and returns the least degree with g*f = 0 or
/// g*(f+1) = 0. Truth tables of candidates come from superset indicators,
/// not from the transform under test.
inline int ai_exhaustive(const TruthTable& f) {
  const int n = f.vars();
  if (n > 4) throw std::invalid_argument("ai_exhaustive handles n <= 4 only");
  const std::uint32_t size = f.size();
  // monomial m evaluates to 1 exactly on supersets of m
  std::vector<std::uint32_t> monomial_tt(size);
  for (std::uint32_t m = 0; m < size; ++m) {
    std::uint32_t tt = 0;
    for (std::uint32_t x = 0; x < size; ++x)
      if ((m & ~x) == 0) tt |= std::uint32_t{1} << x;
    monomial_tt[m] = tt;
  }
  std::uint32_t f_tt = 0;
  for (std::uint32_t x = 0; x < size; ++x)
    if (f.get(x)) f_tt |= std::uint32_t{1} << x;
  const std::uint32_t full = (std::uint32_t{1} << size) - 1;

  const std::uint32_t anf_count = std::uint32_t{1} << size;
  std::vector<std::uint32_t> tt_of_anf(anf_count);
  tt_of_anf[0] = 0;
  int best = n;  // degree of any single function is at most n
  for (std::uint32_t g = 1; g < anf_count; ++g) {
    tt_of_anf[g] = tt_of_anf[g & (g - 1)] ^ monomial_tt[std::countr_zero(g)];
    int deg = 0;
    for (std::uint32_t rest = g; rest; rest &= rest - 1) {
      // bit position in the ANF mask is the monomial, its weight the degree
      const int pc = std::popcount(static_cast<std::uint32_t>(std::countr_zero(rest)));
      if (pc > deg) deg = pc;
    }
    if (deg >= best) continue;
    const std::uint32_t g_tt = tt_of_anf[g];
    if ((g_tt & f_tt) == 0 || (g_tt & (full & ~f_tt)) == 0) best = deg;
  }
  return best;
}

inline TruthTable random_table(int n, Rng& rng) {
  return TruthTable::from_fn(n, [&](std::uint32_t) { return rng.bit(); });
}

}  // namespace oracles
