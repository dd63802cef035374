#pragma once

// Exact nonnegative-integer convolution. Counts are ground truth for every
// downstream check, so there is no floating-point path here: small or sparse
// problems go through schoolbook accumulation, large ones through
// number-theoretic transforms over word-size primes with CRT reconstruction.
// A separate double-precision FFT serves the real-valued (expectation /
// singular integral) convolutions, where values are probabilities.

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "basisforge/core.hpp"

namespace basisforge {
namespace ntt {

// NTT-friendly primes. p1 supports transforms up to 2^27, p2 and p3 up to 2^26.
inline constexpr u64 kP1 = 2013265921;  // 15·2^27 + 1, g = 31
inline constexpr u64 kP2 = 1811939329;  // 27·2^26 + 1, g = 13
inline constexpr u64 kP3 = 469762049;   //  7·2^26 + 1, g = 3
inline constexpr u64 kRoots[3] = {31, 13, 3};
inline constexpr u64 kPrimes[3] = {kP1, kP2, kP3};
inline constexpr unsigned kMaxLog2[3] = {27, 26, 26};

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

inline u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

inline u64 invmod(u64 a, u64 m) { return powmod(a, m - 2, m); }

/// In-place iterative radix-2 transform over Z/p. |a| must be a power of two.
inline void transform(std::vector<u64>& a, u64 p, u64 generator, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    u64 w = powmod(generator, (p - 1) / len, p);
    if (inverse) w = invmod(w, p);
    for (std::size_t i = 0; i < n; i += len) {
      u64 wn = 1;
      for (std::size_t j = 0; j < len / 2; ++j) {
        u64 u = a[i + j];
        u64 v = mulmod(a[i + j + len / 2], wn, p);
        a[i + j] = u + v < p ? u + v : u + v - p;
        a[i + j + len / 2] = u >= v ? u - v : u + p - v;
        wn = mulmod(wn, w, p);
      }
    }
  }
  if (inverse) {
    u64 n_inv = invmod(n % p, p);
    for (auto& x : a) x = mulmod(x, n_inv, p);
  }
}

inline std::vector<u64> convolve_mod(const std::vector<u64>& a, const std::vector<u64>& b,
                                     std::size_t out_len, unsigned prime_idx) {
  const u64 p = kPrimes[prime_idx];
  std::size_t need = std::min(out_len, a.size() + b.size() - 1);
  std::size_t sz = 1;
  unsigned lg = 0;
  while (sz < a.size() + b.size() - 1) { sz <<= 1; ++lg; }
  if (lg > kMaxLog2[prime_idx])
    throw overflow_error("ntt: transform size exceeds prime capacity");
  std::vector<u64> fa(sz, 0), fb(sz, 0);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i] % p;
  for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i] % p;
  transform(fa, p, kRoots[prime_idx], false);
  transform(fb, p, kRoots[prime_idx], false);
  for (std::size_t i = 0; i < sz; ++i) fa[i] = mulmod(fa[i], fb[i], p);
  transform(fa, p, kRoots[prime_idx], true);
  fa.resize(need);
  return fa;
}

/// CRT lift of residues (mod p1[, p2[, p3]]) into the unique value < Πpᵢ.
inline u128 crt(const u64* r, unsigned n_primes) {
  u128 x = r[0];
  if (n_primes >= 2) {
    static const u64 inv_p1_mod_p2 = invmod(kP1 % kP2, kP2);
    u64 t = mulmod((r[1] + kP2 - static_cast<u64>(x % kP2)) % kP2, inv_p1_mod_p2, kP2);
    x += u128(kP1) * t;
  }
  if (n_primes >= 3) {
    static const u64 p1p2_mod_p3 = mulmod(kP1 % kP3, kP2 % kP3, kP3);
    static const u64 inv_p1p2_mod_p3 = invmod(p1p2_mod_p3, kP3);
    u64 t = mulmod((r[2] + kP3 - static_cast<u64>(x % kP3)) % kP3, inv_p1p2_mod_p3, kP3);
    x += u128(kP1) * kP2 * t;
  }
  return x;
}

}  // namespace ntt

namespace detail {

inline std::size_t nonzero_count(const std::vector<u64>& v) {
  std::size_t c = 0;
  for (u64 x : v) c += (x != 0);
  return c;
}

inline std::vector<u64> schoolbook(const std::vector<u64>& a, const std::vector<u64>& b,
                                   std::size_t out_len) {
  // Iterate the sparser operand's nonzeros against the other array.
  const std::vector<u64>* sp = &a;
  const std::vector<u64>* de = &b;
  if (nonzero_count(b) < nonzero_count(a)) std::swap(sp, de);
  std::vector<u64> out(std::min(out_len, a.size() + b.size() - 1), 0);
  for (std::size_t i = 0; i < sp->size() && i < out.size(); ++i) {
    u64 c = (*sp)[i];
    if (c == 0) continue;
    std::size_t jmax = std::min(de->size(), out.size() - i);
    for (std::size_t j = 0; j < jmax; ++j) out[i + j] += c * (*de)[j];
  }
  return out;
}

}  // namespace detail

/// Exact convolution of nonnegative integer arrays, truncated to out_len
/// coefficients. value_bound must dominate every true output coefficient;
/// it selects how many NTT primes certify exactness. Overflow of the 64-bit
/// count type is detected and thrown, never wrapped.
inline std::vector<u64> convolve_exact(const std::vector<u64>& a, const std::vector<u64>& b,
                                       std::size_t out_len, u128 value_bound) {
  if (a.empty() || b.empty() || out_len == 0) return std::vector<u64>(out_len, 0);

  static const u128 cap2 = u128(ntt::kP1) * ntt::kP2;
  static const u128 cap3 = cap2 * ntt::kP3;
  const u128 u64max = ~u64{0};

  // Schoolbook: always for small sizes, and whenever sparsity makes it the
  // cheaper exact path. Products of u64 inputs can only be accumulated
  // directly when the bound already fits.
  std::size_t n = std::max(a.size(), b.size());
  std::size_t work = std::min(detail::nonzero_count(a), detail::nonzero_count(b)) * n;
  if (value_bound <= u64max && (n <= (1u << 16) || work < (1u << 25))) {
    return detail::schoolbook(a, b, out_len);
  }

  unsigned n_primes;
  if (value_bound < ntt::kP1) n_primes = 1;
  else if (value_bound < cap2) n_primes = 2;
  else if (value_bound < cap3) n_primes = 3;
  else
    throw overflow_error("convolve_exact: coefficient bound exceeds CRT capacity; "
                         "retry with smaller h or n_max");

  std::vector<std::vector<u64>> residues(n_primes);
  for (unsigned k = 0; k < n_primes; ++k) residues[k] = ntt::convolve_mod(a, b, out_len, k);

  std::size_t m = residues[0].size();
  std::vector<u64> out(std::min(out_len, m), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    u64 r[3] = {0, 0, 0};
    for (unsigned k = 0; k < n_primes; ++k) r[k] = residues[k][i];
    u128 v = ntt::crt(r, n_primes);
    if (v > u64max)
      throw overflow_error("convolve_exact: coefficient at n=" + std::to_string(i) +
                           " exceeds 64-bit counts; retry with smaller h or n_max");
    out[i] = static_cast<u64>(v);
  }
  out.resize(out_len, 0);
  return out;
}

/// h-fold convolution power of a 0/1 indicator array, truncated to n_max+1
/// coefficients. per_fold_bound(j) must bound the coefficients of the j-fold
/// power on [0, n_max].
inline std::vector<u64> indicator_power(const std::vector<u64>& ind, unsigned h, u64 n_max,
                                        const std::function<u128(unsigned)>& per_fold_bound) {
  if (h < 1) throw std::invalid_argument("indicator_power: h must be >= 1");
  std::size_t len = static_cast<std::size_t>(n_max) + 1;
  std::vector<u64> base(ind.begin(),
                        ind.begin() + std::min<std::size_t>(ind.size(), len));
  base.resize(len, 0);
  std::vector<u64> acc = base;
  for (unsigned j = 2; j <= h; ++j)
    acc = convolve_exact(acc, base, len, per_fold_bound(j));
  return acc;
}

// ---------------------------------------------------------------------------
// Real-valued convolution (double FFT).

namespace detail {

inline void fft(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    double ang = 2.0 * M_PI / static_cast<double>(len) * (inverse ? -1.0 : 1.0);
    std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        auto u = a[i + j];
        auto v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse)
    for (auto& x : a) x /= static_cast<double>(n);
}

}  // namespace detail

inline std::vector<double> convolve_real(const std::vector<double>& a,
                                         const std::vector<double>& b, std::size_t out_len) {
  if (a.empty() || b.empty() || out_len == 0) return std::vector<double>(out_len, 0.0);
  std::size_t full = a.size() + b.size() - 1;
  std::size_t need = std::min(out_len, full);
  if (static_cast<double>(a.size()) * static_cast<double>(b.size()) < 1.0e6) {
    std::vector<double> out(need, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0.0) continue;
      std::size_t jmax = std::min(b.size(), need > i ? need - i : 0);
      for (std::size_t j = 0; j < jmax; ++j) out[i + j] += a[i] * b[j];
    }
    out.resize(out_len, 0.0);
    return out;
  }
  std::size_t sz = 1;
  while (sz < full) sz <<= 1;
  std::vector<std::complex<double>> fa(sz), fb(sz);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
  detail::fft(fa, false);
  detail::fft(fb, false);
  for (std::size_t i = 0; i < sz; ++i) fa[i] *= fb[i];
  detail::fft(fa, true);
  std::vector<double> out(out_len, 0.0);
  for (std::size_t i = 0; i < need; ++i) out[i] = fa[i].real();
  return out;
}

}  // namespace basisforge
