#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "basisforge/convolution.hpp"
#include "support/oracles.hpp"

using namespace basisforge;

namespace {
std::vector<u64> naive_conv(const std::vector<u64>& a, const std::vector<u64>& b,
                            std::size_t out_len) {
  std::vector<u64> out(out_len, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size() && i + j < out_len; ++j) out[i + j] += a[i] * b[j];
  return out;
}
}  // namespace

TEST_CASE("NTT paths agree with naive convolution") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 8; ++trial) {
    std::size_t la = 1 + rng() % 700, lb = 1 + rng() % 700;
    std::vector<u64> a(la), b(lb);
    for (auto& x : a) x = rng() % 1000;
    for (auto& x : b) x = rng() % 1000;
    auto want = naive_conv(a, b, la + lb - 1);
    u64 wmax = 0;
    for (u64 w : want) wmax = std::max(wmax, w);

    // force each prime count by inflating the declared bound
    auto one = convolve_exact(a, b, la + lb - 1, wmax);
    auto two = convolve_exact(a, b, la + lb - 1, u128(ntt::kP1) + 1);
    auto three = convolve_exact(a, b, la + lb - 1, u128(ntt::kP1) * ntt::kP2 + 1);
    REQUIRE(one == want);
    REQUIRE(two == want);
    REQUIRE(three == want);
  }
}

TEST_CASE("count overflow is detected, not wrapped") {
  // true coefficient 2^80 exceeds the 64-bit count type; the three-prime CRT
  // reconstructs it exactly and the range check fires
  std::vector<u64> big(2, u64{1} << 40);
  REQUIRE_THROWS_AS(convolve_exact(big, big, 3, u128(1) << 81), basisforge::overflow_error);
  // a bound beyond what three primes certify is refused outright
  REQUIRE_THROWS_AS(convolve_exact(big, big, 3, ~u128{0}), basisforge::overflow_error);
}

TEST_CASE("indicator powers match tuple enumeration on random sparse sets") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 4; ++trial) {
    u64 H = 160;
    std::vector<u64> elems;
    for (u64 n = 0; n <= H; ++n)
      if (std::uniform_real_distribution<>(0, 1)(rng) < 0.2) elems.push_back(n);
    if (elems.empty()) elems.push_back(1);
    std::vector<u64> ind(H + 1, 0);
    for (u64 e : elems) ind[e] = 1;
    for (unsigned h : {2u, 3u, 4u}) {
      auto r = indicator_power(ind, h, H, [&](unsigned) { return u128(1) << 40; });
      for (u64 n = 0; n <= H; n += 13)
        REQUIRE(r[static_cast<std::size_t>(n)] == oracles::brute_r(elems, h, n));
    }
  }
}

TEST_CASE("real convolution matches direct summation") {
  std::mt19937_64 rng(13);
  std::vector<double> a(257), b(123);
  for (auto& x : a) x = std::uniform_real_distribution<>(0, 1)(rng);
  for (auto& x : b) x = std::uniform_real_distribution<>(0, 1)(rng);
  auto got = convolve_real(a, b, 300);
  for (std::size_t n = 0; n < 300; n += 17) {
    double want = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (n >= i && n - i < b.size()) want += a[i] * b[n - i];
    REQUIRE(got[n] == Catch::Approx(want).margin(1e-9));
  }
  // FFT path (big operands) against the quadratic path
  std::vector<double> c(3000, 0.25), d(2000, 0.5);
  auto fft = convolve_real(c, d, 4999);
  REQUIRE(fft[0] == Catch::Approx(0.125).margin(1e-9));
  REQUIRE(fft[1999] == Catch::Approx(0.125 * 2000).margin(1e-6));
}
