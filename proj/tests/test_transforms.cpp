#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <cstdlib>
#include <vector>

#include "cognate/cognate.hpp"
#include "oracles.hpp"

using namespace cognate;

namespace {

TruthTable inner_product_bent(int n) {
  // x1x2 + x3x4 + ... + x(n-1)xn, the standard bent construction
  return TruthTable::from_fn(n, [n](std::uint32_t x) {
    bool v = false;
    for (int i = 0; i + 1 < n; i += 2) v ^= ((x >> i) & (x >> (i + 1)) & 1) != 0;
    return v;
  });
}

}  // namespace

TEST_CASE("walsh spectrum of x1*x2", "[transforms]") {
  const auto f = parse_truth_table("0001");
  const auto w = walsh_spectrum(f);
  REQUIRE(w.n == 2);
  REQUIRE(w.values == std::vector<std::int32_t>{2, 2, 2, -2});
  REQUIRE(w.max_abs() == 2);
}

TEST_CASE("walsh spectrum of constants and linear functions", "[transforms]") {
  const auto zero = TruthTable(3);
  const auto wz = walsh_spectrum(zero);
  REQUIRE(wz.values[0] == 8);
  for (std::uint32_t a = 1; a < 8; ++a) REQUIRE(wz.values[a] == 0);

  for (std::uint32_t a = 1; a < 8; ++a) {
    const auto lin =
        TruthTable::from_fn(3, [a](std::uint32_t x) { return oracles::parity(a & x) != 0; });
    const auto w = walsh_spectrum(lin);
    for (std::uint32_t b = 0; b < 8; ++b) REQUIRE(w.values[b] == (b == a ? 8 : 0));
  }
}

TEST_CASE("walsh spectrum matches the defining sum", "[transforms]") {
  Rng rng(0x7a1e5);
  for (int n = 1; n <= 8; ++n) {
    for (int rep = 0; rep < 30; ++rep) {
      const auto f = oracles::random_table(n, rng);
      REQUIRE(walsh_spectrum(f).values == oracles::walsh_direct(f));
    }
  }
}

TEST_CASE("parseval identity", "[transforms]") {
  Rng rng(0xbead);
  for (int n = 2; n <= 10; ++n) {
    const auto f = oracles::random_table(n, rng);
    const auto w = walsh_spectrum(f);
    std::int64_t sum = 0;
    for (const auto v : w.values) sum += static_cast<std::int64_t>(v) * v;
    REQUIRE(sum == std::int64_t{1} << (2 * n));
  }
}

TEST_CASE("incremental walsh update after one flip", "[transforms]") {
  const auto zero = TruthTable(2);
  const auto w = incremental_walsh_update(walsh_spectrum(zero), 3, false);
  REQUIRE(w.values == std::vector<std::int32_t>{2, 2, 2, -2});
}

TEST_CASE("incremental walsh update tracks a random flip walk", "[transforms]") {
  Rng rng(0x51de);
  auto f = oracles::random_table(6, rng);
  auto w = walsh_spectrum(f);
  for (int step = 0; step < 50; ++step) {
    const auto x = rng.below(f.size());
    w = incremental_walsh_update(w, x, f.get(x));
    f.flip(x);
    if (step % 10 == 9) REQUIRE(w.values == walsh_spectrum(f).values);
  }
  REQUIRE(w.values == walsh_spectrum(f).values);
}

TEST_CASE("anf of x1x2 + x3", "[transforms]") {
  const auto f = TruthTable::from_fn(
      3, [](std::uint32_t x) { return (((x & 1) & (x >> 1)) ^ ((x >> 2) & 1)) != 0; });
  const auto a = moebius_transform(f);
  REQUIRE(a.degree() == 2);
  for (std::uint32_t m = 0; m < 8; ++m) REQUIRE(a.coeffs.test(m) == (m == 3 || m == 4));
}

TEST_CASE("moebius transform matches the subset sum", "[transforms]") {
  Rng rng(0xa11ce);
  for (int n = 1; n <= 8; ++n) {
    const auto f = oracles::random_table(n, rng);
    const auto a = moebius_transform(f);
    const auto ref = oracles::anf_direct(f);
    for (std::uint32_t m = 0; m < f.size(); ++m) REQUIRE(a.coeffs.test(m) == ref[m]);
    REQUIRE(a.degree() == oracles::degree_direct(f));
  }
}

TEST_CASE("moebius transform is involutive", "[transforms]") {
  Rng rng(0x90b0);
  for (int n = 1; n <= 10; ++n) {
    const auto f = oracles::random_table(n, rng);
    REQUIRE(truth_table_from_anf(moebius_transform(f)) == f);
  }
}

TEST_CASE("degree of constants is zero", "[transforms]") {
  REQUIRE(moebius_transform(TruthTable(3)).degree() == 0);
  const auto one = TruthTable::from_fn(3, [](std::uint32_t) { return true; });
  const auto a = moebius_transform(one);
  REQUIRE(a.degree() == 0);
  REQUIRE(a.coeffs.test(0));
}

TEST_CASE("autocorrelation agrees with the defining sum", "[transforms]") {
  Rng rng(0xac0b);
  for (int n = 2; n <= 8; ++n) {
    const auto f = oracles::random_table(n, rng);
    const auto ac = autocorrelation(f);
    REQUIRE(ac.values == oracles::autocorrelation_direct(f));
    REQUIRE(ac.values[0] == std::int32_t{1} << n);
    // both entry points give the same spectrum
    REQUIRE(autocorrelation(walsh_spectrum(f)).values == ac.values);
  }
}

TEST_CASE("bent functions have flat walsh and vanishing autocorrelation", "[transforms]") {
  for (int n = 2; n <= 8; n += 2) {
    const auto f = inner_product_bent(n);
    const auto w = walsh_spectrum(f);
    for (const auto v : w.values) REQUIRE(std::abs(v) == 1 << (n / 2));
    const auto ac = autocorrelation(w);
    for (std::uint32_t d = 1; d < f.size(); ++d) REQUIRE(ac.values[d] == 0);
  }
}
