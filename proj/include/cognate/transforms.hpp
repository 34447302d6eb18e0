#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "cognate/bitvec.hpp"
#include "cognate/errors.hpp"
#include "cognate/truth_table.hpp"

namespace cognate {

/// Walsh-Hadamard spectrum: values[a] = sum_x (-1)^(f(x) xor <a,x>),
/// <a,x> the parity of a & x. Parseval: sum values^2 == 2^(2n).
struct WalshSpectrum {
  int n = 0;
  std::vector<std::int32_t> values;

  std::uint32_t size() const { return std::uint32_t{1} << n; }

  std::int32_t max_abs() const {
    std::int32_t m = 0;
    for (auto v : values) {
      const std::int32_t a = v < 0 ? -v : v;
      if (a > m) m = a;
    }
    return m;
  }
};

/// Autocorrelation spectrum: values[d] = sum_x (-1)^(f(x) xor f(x xor d)).
/// values[0] is always 2^n.
struct AutocorrelationSpectrum {
  int n = 0;
  std::vector<std::int32_t> values;

  std::uint32_t size() const { return std::uint32_t{1} << n; }
};

/// Algebraic normal form: coeffs bit at mask m is the coefficient of the
/// monomial over the variables selected by m.
struct AnfCoefficients {
  int n = 0;
  BitVec coeffs;

  /// Max Hamming weight of a mask with a set coefficient; 0 for the zero
  /// function.
  int degree() const {
    int d = 0;
    const auto& words = coeffs.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
      std::uint64_t bits = words[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        bits &= bits - 1;
        const auto mask = static_cast<std::uint32_t>(64 * w + static_cast<std::size_t>(b));
        const int wt = std::popcount(mask);
        if (wt > d) d = wt;
      }
    }
    return d;
  }
};

namespace detail {

// In-place Walsh-Hadamard butterfly over a length-2^n integer vector.
template <typename Int>
void walsh_butterfly(std::vector<Int>& v) {
  const std::size_t size = v.size();
  for (std::size_t len = 1; len < size; len <<= 1)
    for (std::size_t i = 0; i < size; i += 2 * len)
      for (std::size_t j = i; j < i + len; ++j) {
        const Int a = v[j];
        const Int b = v[j + len];
        v[j] = a + b;
        v[j + len] = a - b;
      }
}

// In-place Moebius (binary zeta) butterfly on a packed GF(2) vector:
// for each stride s, entry j with (j & s) set absorbs entry j ^ s.
// Strides below 64 run word-parallel through shift masks.
inline void moebius_butterfly(BitVec& v) {
  static constexpr std::uint64_t kLow[6] = {
      0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
      0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull};
  auto& words = v.words();
  for (int s = 0; s < 6 && (std::size_t{1} << s) < v.size(); ++s)
    for (auto& w : words) w ^= (w & kLow[s]) << (1 << s);
  for (std::size_t stride = 1; stride < words.size(); stride <<= 1)
    for (std::size_t i = 0; i < words.size(); i += 2 * stride)
      for (std::size_t j = i; j < i + stride; ++j) words[j + stride] ^= words[j];
}

}  // namespace detail

/// Fast Walsh-Hadamard transform, O(n 2^n) integer ops.
inline WalshSpectrum walsh_spectrum(const TruthTable& f) {
  WalshSpectrum w{f.vars(), std::vector<std::int32_t>(f.size())};
  for (std::uint32_t x = 0; x < f.size(); ++x) w.values[x] = f.get(x) ? -1 : 1;
  detail::walsh_butterfly(w.values);
  return w;
}

/// Moebius transform (truth table -> ANF). Involutive: the same butterfly
/// maps the coefficients back to the table.
inline AnfCoefficients moebius_transform(const TruthTable& f) {
  AnfCoefficients a{f.vars(), f.bits()};
  detail::moebius_butterfly(a.coeffs);
  return a;
}

/// Inverse of moebius_transform.
inline TruthTable truth_table_from_anf(const AnfCoefficients& a) {
  BitVec bits = a.coeffs;
  detail::moebius_butterfly(bits);
  return TruthTable(a.n, std::move(bits));
}

/// Autocorrelation via the Wiener-Khinchin route: inverse WHT of the
/// squared Walsh spectrum, divided by 2^n.
inline AutocorrelationSpectrum autocorrelation(const WalshSpectrum& w) {
  std::vector<std::int64_t> sq(w.values.size());
  for (std::size_t i = 0; i < sq.size(); ++i)
    sq[i] = static_cast<std::int64_t>(w.values[i]) * w.values[i];
  detail::walsh_butterfly(sq);
  AutocorrelationSpectrum ac{w.n, std::vector<std::int32_t>(sq.size())};
  for (std::size_t i = 0; i < sq.size(); ++i)
    ac.values[i] = static_cast<std::int32_t>(sq[i] >> w.n);
  return ac;
}

inline AutocorrelationSpectrum autocorrelation(const TruthTable& f) {
  return autocorrelation(walsh_spectrum(f));
}

namespace detail {

// Spectrum delta for flipping entry x: every W(a) moves by
// -2 * (-1)^f(x) * (-1)^<a,x>.
inline void walsh_flip_inplace(std::vector<std::int32_t>& values, std::uint32_t x,
                               bool old_bit) {
  const std::int32_t step = old_bit ? 2 : -2;
  for (std::uint32_t a = 0; a < values.size(); ++a)
    values[a] += (std::popcount(a & x) & 1) ? -step : step;
}

}  // namespace detail

/// Spectrum of f with entry `flipped_index` flipped, given the spectrum of f
/// and the previous value of that entry. O(2^n) instead of O(n 2^n).
inline WalshSpectrum incremental_walsh_update(const WalshSpectrum& w,
                                              std::uint32_t flipped_index, bool old_bit) {
  WalshSpectrum out = w;
  detail::walsh_flip_inplace(out.values, flipped_index, old_bit);
  return out;
}

}  // namespace cognate
