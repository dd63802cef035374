#pragma once

// Representation functions of a sequence: ordered counts r, cumulative s,
// exact (distinct-part, unordered) counts ρ, and maximal-disjoint-family
// sizes ρ̂, together with the identities tying them to one another.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "basisforge/convolution.hpp"
#include "basisforge/core.hpp"
#include "basisforge/sequence.hpp"

namespace basisforge {

/// r and its prefix sums s for one (sequence, h), exact integer arithmetic.
struct RepTable {
  unsigned h = 1;
  u64 n_max = 0;
  std::vector<u64> r;  // r[n] = #ordered h-tuples of elements summing to n
  std::vector<u64> s;  // s[n] = Σ_{k≤n} r[k]
};

namespace detail {

inline u128 saturating_pow(u64 base, unsigned e, u128 cap) {
  u128 r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (base != 0 && r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

inline u128 saturating_binomial(u64 n, unsigned k, u128 cap) {
  u128 r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    u128 num = n - k + i;
    if (num != 0 && r > (cap * i) / num) return cap + 1;
    r = r * num / i;  // partial products are exact binomials
  }
  return r;
}

/// Bound on the j-fold coefficients over [0, n_max]: r_j(n) ≤ s_j(n) ≤ A(n)^j
/// and r_j(n) ≤ C(n+j−1, j−1).
inline u128 fold_bound(u64 count_at_nmax, u64 n_max, unsigned j) {
  static const u128 cap = u128(ntt::kP1) * ntt::kP2 * ntt::kP3;
  u128 b1 = saturating_pow(count_at_nmax, j, cap);
  u128 b2 = saturating_binomial(n_max + j - 1, j - 1, cap);
  return std::min(b1, b2);
}

}  // namespace detail

/// r by h-fold convolution of the indicator array; s by prefix sums.
/// Exact; overflow of the count type is detected, not wrapped.
inline RepTable rep_table(const Sequence& A, unsigned h, u64 n_max) {
  if (h < 1) throw std::invalid_argument("rep_table: h must be >= 1");
  if (n_max > A.horizon()) throw std::out_of_range("rep_table: n_max beyond horizon");
  RepTable t;
  t.h = h;
  t.n_max = n_max;
  const u64 cnt = A.count(n_max);
  auto ind = A.indicator(n_max);
  t.r = indicator_power(ind, h, n_max,
                        [&](unsigned j) { return detail::fold_bound(cnt, n_max, j); });
  t.s.resize(t.r.size());
  u64 acc = 0;
  for (std::size_t n = 0; n < t.r.size(); ++n) {
    acc = checked_add(acc, t.r[n], "rep_table: prefix sum s");
    t.s[n] = acc;
  }
  return t;
}

/// Visits exact h-representations (k₁ < … < k_h, Σkᵢ = n, k₁ ≥ lower_bound)
/// in lexicographic order. Return false from the visitor to stop.
template <typename Visitor>
inline void for_each_exact_rep(const Sequence& A, unsigned h, u64 n, u64 lower_bound,
                               Visitor&& visit) {
  if (h < 1) return;
  const auto& e = A.elements();
  std::size_t begin = static_cast<std::size_t>(
      std::lower_bound(e.begin(), e.end(), lower_bound) - e.begin());
  std::size_t end = static_cast<std::size_t>(
      std::upper_bound(e.begin(), e.end(), std::min(n, A.horizon())) - e.begin());

  // prefix[i] = sum of e[begin..i); used for minimal-completion pruning
  std::vector<u64> prefix(end - begin + 1, 0);
  for (std::size_t i = begin; i < end; ++i) prefix[i - begin + 1] = prefix[i - begin] + e[i];

  std::vector<u64> cur(h);
  bool stopped = false;
  std::function<void(std::size_t, unsigned, u64)> rec = [&](std::size_t idx, unsigned depth,
                                                            u64 rem) {
    if (stopped) return;
    unsigned left = h - depth;
    if (left == 0) {
      if (rem == 0 && !visit(static_cast<const std::vector<u64>&>(cur))) stopped = true;
      return;
    }
    for (std::size_t i = idx; i < end; ++i) {
      if (e[i] > rem) break;
      // smallest completion uses the next left−1 elements after i
      if (i + left > end) break;
      u64 min_tail = prefix[i - begin + left] - prefix[i - begin + 1];
      if (e[i] + min_tail > rem) {
        // later i only increases the minimum
        break;
      }
      // largest completion: left−1 largest remaining elements
      u64 max_tail = prefix[end - begin] - prefix[end - begin - (left - 1)];
      if (e[i] + max_tail < rem) continue;
      cur[depth] = e[i];
      rec(i + 1, depth + 1, rem - e[i]);
      if (stopped) return;
    }
  };
  rec(0, 0, n);
}

/// One exact representation set, materialized.
struct ExactRepSet {
  u64 n = 0;
  unsigned h = 2;
  std::vector<std::vector<u64>> reps;  // lexicographic order
};

inline ExactRepSet exact_reps(const Sequence& A, unsigned h, u64 n, u64 lower_bound = 0,
                              std::size_t cap = SIZE_MAX) {
  ExactRepSet out;
  out.n = n;
  out.h = h;
  for_each_exact_rep(A, h, n, lower_bound, [&](const std::vector<u64>& rep) {
    if (out.reps.size() >= cap) return false;
    out.reps.push_back(rep);
    return true;
  });
  return out;
}

/// ρ(n): number of strictly increasing h-tuples with the given sum and
/// smallest part ≥ lower_bound. Counting DP, no tuple storage.
inline u64 rho_exact(const Sequence& A, unsigned h, u64 n, u64 lower_bound = 0) {
  if (h < 2) throw std::invalid_argument("rho_exact: h must be >= 2");
  if (n > A.horizon()) throw std::out_of_range("rho_exact: n beyond horizon");
  const auto& e = A.elements();
  auto lo = std::lower_bound(e.begin(), e.end(), lower_bound);
  auto hi = std::upper_bound(e.begin(), e.end(), n);
  if (h == 2) {
    // two-pointer over a + b = n, a < b
    u64 c = 0;
    auto l = lo;
    auto r = hi;
    while (l < r) {
      --r;
      while (l < r && *l + *r < n) ++l;
      if (l < r && *l + *r == n) { ++c; ++l; }
    }
    return c;
  }
  // dp[j][m]: ways to pick j distinct elements from the processed prefix
  // summing to m. Elements processed in increasing order.
  std::size_t len = static_cast<std::size_t>(n) + 1;
  std::vector<std::vector<u64>> dp(h + 1, std::vector<u64>(len, 0));
  dp[0][0] = 1;
  for (auto it = lo; it < hi; ++it) {
    u64 a = *it;
    for (unsigned j = h; j >= 1; --j) {
      auto& row = dp[j];
      auto& prev = dp[j - 1];
      for (u64 m = n; m >= a; --m) {
        u64 add = prev[static_cast<std::size_t>(m - a)];
        if (add) row[static_cast<std::size_t>(m)] =
            checked_add(row[static_cast<std::size_t>(m)], add, "rho_exact");
        if (m == 0) break;
      }
    }
  }
  return dp[h][n];
}

enum class RhoHatMode { greedy, exact_max };

/// Size of a maximal pairwise-disjoint family of exact h-representations.
/// greedy: deterministic lexicographic-smallest-first scan.
/// exact_max: true maximum via branch and bound over at most `cap` stored
/// representations (throws when the representation count exceeds the cap).
inline u64 rho_hat(const Sequence& A, unsigned h, u64 n, RhoHatMode mode,
                   std::size_t cap = 10000) {
  if (h < 2) throw std::invalid_argument("rho_hat: h must be >= 2");
  if (h == 2) return rho_exact(A, 2, n);  // distinct 2-reps {a, n−a} never overlap

  if (mode == RhoHatMode::greedy) {
    std::vector<u64> used;  // sorted values already consumed
    u64 taken = 0;
    for_each_exact_rep(A, h, n, 0, [&](const std::vector<u64>& rep) {
      for (u64 v : rep)
        if (std::binary_search(used.begin(), used.end(), v)) return true;
      for (u64 v : rep) used.insert(std::upper_bound(used.begin(), used.end(), v), v);
      ++taken;
      return true;
    });
    return taken;
  }

  ExactRepSet er = exact_reps(A, h, n, 0, cap + 1);
  if (er.reps.size() > cap)
    throw std::invalid_argument("rho_hat: exact-max over branch-and-bound cap");
  const auto& reps = er.reps;
  std::size_t m = reps.size();
  u64 best = 0;
  std::vector<u64> used;
  std::function<void(std::size_t, u64)> rec = [&](std::size_t i, u64 cnt) {
    if (cnt + (m - i) <= best) return;  // not enough reps left to improve
    if (i == m) { best = std::max(best, cnt); return; }
    bool free = true;
    for (u64 v : reps[i])
      if (std::binary_search(used.begin(), used.end(), v)) { free = false; break; }
    if (free) {
      for (u64 v : reps[i]) used.insert(std::upper_bound(used.begin(), used.end(), v), v);
      rec(i + 1, cnt + 1);
      for (u64 v : reps[i]) used.erase(std::find(used.begin(), used.end(), v));
    }
    rec(i + 1, cnt);
  };
  rec(0, 0);
  return best;
}

/// Count of ordered h-tuples with a repeated entry: r(n) − h!·ρ(n).
inline u64 nonexact_count(const Sequence& A, unsigned h, u64 n) {
  if (h < 2) throw std::invalid_argument("nonexact_count: h must be >= 2");
  u64 r = rep_table(A, h, n).r[static_cast<std::size_t>(n)];
  u64 rho = rho_exact(A, h, n);
  u64 hf = factorial_u64(h);
  return r - checked_mul(hf, rho, "nonexact_count");
}

/// 𝒩(n) = Σ_{k≤n/2} r_{h−1}(n−2k)·𝟙(k), the auxiliary sum bounding
/// non-exact counts: nonexact(h) ≤ C(h,2)·n_aux(h−1).
inline u64 n_aux(const Sequence& A, unsigned h, u64 n) {
  if (h < 2) throw std::invalid_argument("n_aux: h must be >= 2");
  RepTable t = rep_table(A, h - 1, n);
  u64 acc = 0;
  for (u64 a : A.elements()) {
    if (a > n / 2) break;
    acc = checked_add(acc, t.r[static_cast<std::size_t>(n - 2 * a)], "n_aux");
  }
  return acc;
}

struct ExtensionIdentityReport {
  u64 lhs = 0;  // r_{A∪{k},h}(n), recomputed independently
  u64 rhs = 0;  // r_{A,h}(n) + Σ_ℓ C(h,ℓ)·r_{A,h−ℓ}(n−ℓk) + δ_{n/h}(k)
  bool ok = false;
};

/// Verifies the one-element-extension identity by computing both sides.
inline ExtensionIdentityReport extension_identity_check(const Sequence& A, u64 k, unsigned h,
                                                        u64 n) {
  if (n > A.horizon()) throw std::out_of_range("extension_identity_check: n beyond horizon");
  if (k <= A.horizon() && A.contains(k))
    throw std::invalid_argument("extension_identity_check: k must not be in A");
  ExtensionIdentityReport rep;

  std::vector<u64> ext = A.elements();
  u64 new_horizon = std::max(A.horizon(), k);
  if (k <= new_horizon) ext.insert(std::upper_bound(ext.begin(), ext.end(), k), k);
  Sequence Ak(std::move(ext), new_horizon);
  rep.lhs = rep_table(Ak, h, n).r[static_cast<std::size_t>(n)];

  u64 rhs = rep_table(A, h, std::min(n, A.horizon())).r[static_cast<std::size_t>(n)];
  for (unsigned l = 1; l + 1 <= h; ++l) {
    if (u128(l) * k > n) break;
    u64 m = n - l * k;
    u64 term = rep_table(A, h - l, std::min(n, A.horizon())).r[static_cast<std::size_t>(m)];
    rhs = checked_add(rhs, checked_mul(binomial_u64(h, l), term, "extension_identity"),
                      "extension_identity");
  }
  if (u128(h) * k == n) rhs = checked_add(rhs, 1, "extension_identity");
  rep.rhs = rhs;
  rep.ok = rep.lhs == rep.rhs;
  return rep;
}

/// Full ρ table on [0, n_max] through Newton's identities over NTT primes:
/// with p_j[j·a] = 1 for a ∈ A, j·e_j = Σ_{i≤j} (−1)^{i−1} p_i ⊛ e_{j−i}.
inline std::vector<u64> rho_table(const Sequence& A, unsigned h, u64 n_max) {
  if (h < 1) throw std::invalid_argument("rho_table: h must be >= 1");
  if (n_max > A.horizon()) throw std::out_of_range("rho_table: n_max beyond horizon");
  const std::size_t len = static_cast<std::size_t>(n_max) + 1;

  u128 bound = detail::fold_bound(A.count(n_max), n_max, h);
  static const u128 cap2 = u128(ntt::kP1) * ntt::kP2;
  static const u128 cap3 = cap2 * ntt::kP3;
  unsigned n_primes = bound < ntt::kP1 ? 1 : bound < cap2 ? 2 : 3;
  if (bound >= cap3)
    throw overflow_error("rho_table: coefficient bound exceeds CRT capacity");

  std::vector<std::vector<u64>> e_mod(n_primes);
  for (unsigned pi = 0; pi < n_primes; ++pi) {
    const u64 p = ntt::kPrimes[pi];
    // power-sum arrays
    std::vector<std::vector<u64>> psum(h + 1);
    for (unsigned j = 1; j <= h; ++j) {
      psum[j].assign(len, 0);
      for (u64 a : A.elements()) {
        if (a > n_max / std::max<u64>(j, 1) && a != 0) break;
        u128 pos = u128(j) * a;
        if (pos > n_max) break;
        psum[j][static_cast<std::size_t>(pos)] = 1;
      }
    }
    std::vector<std::vector<u64>> e(h + 1);
    e[0].assign(len, 0);
    e[0][0] = 1;
    for (unsigned j = 1; j <= h; ++j) {
      std::vector<u64> acc(len, 0);
      for (unsigned i = 1; i <= j; ++i) {
        auto term = ntt::convolve_mod(psum[i], e[j - i], len, pi);
        term.resize(len, 0);
        if (i % 2 == 1)
          for (std::size_t x = 0; x < len; ++x) acc[x] = (acc[x] + term[x]) % p;
        else
          for (std::size_t x = 0; x < len; ++x) acc[x] = (acc[x] + p - term[x]) % p;
      }
      u64 inv_j = ntt::invmod(j % p, p);
      e[j].assign(len, 0);
      for (std::size_t x = 0; x < len; ++x) e[j][x] = ntt::mulmod(acc[x], inv_j, p);
    }
    e_mod[pi] = std::move(e[h]);
  }

  std::vector<u64> out(len, 0);
  for (std::size_t x = 0; x < len; ++x) {
    u64 r[3] = {0, 0, 0};
    for (unsigned pi = 0; pi < n_primes; ++pi) r[pi] = e_mod[pi][x];
    u128 v = ntt::crt(r, n_primes);
    if (v > ~u64{0})
      throw overflow_error("rho_table: count overflow at n=" + std::to_string(x));
    out[x] = static_cast<u64>(v);
  }
  return out;
}

}  // namespace basisforge
