#pragma once

// Independent oracles for the test suites. Everything here is deliberately
// naive (nested loops, direct recursion) and shares no code with the library
// paths it checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracles {

using u64 = std::uint64_t;

/// Ordered h-tuple count by direct recursion over a sorted element list.
inline u64 brute_r(const std::vector<u64>& elems, unsigned h, u64 n) {
  if (h == 0) return n == 0 ? 1 : 0;
  u64 acc = 0;
  for (u64 a : elems) {
    if (a > n) break;
    acc += brute_r(elems, h - 1, n - a);
  }
  return acc;
}

/// Strictly increasing tuples k₁<…<k_h with Σ = n and k₁ ≥ lb.
inline u64 brute_rho(const std::vector<u64>& elems, unsigned h, u64 n, u64 lb = 0) {
  std::function<u64(std::size_t, unsigned, u64)> rec = [&](std::size_t i, unsigned left,
                                                           u64 rem) -> u64 {
    if (left == 0) return rem == 0 ? 1 : 0;
    u64 acc = 0;
    for (std::size_t j = i; j < elems.size(); ++j) {
      if (elems[j] > rem) break;
      if (left == 1 && elems[j] != rem) continue;
      acc += rec(j + 1, left - 1, rem - elems[j]);
    }
    return acc;
  };
  std::size_t start = 0;
  while (start < elems.size() && elems[start] < lb) ++start;
  return rec(start, h, n);
}

/// All exact representations, materialized (small cases only).
inline std::vector<std::vector<u64>> brute_exact_reps(const std::vector<u64>& elems, unsigned h,
                                                      u64 n) {
  std::vector<std::vector<u64>> out;
  std::vector<u64> cur;
  std::function<void(std::size_t, unsigned, u64)> rec = [&](std::size_t i, unsigned left,
                                                            u64 rem) {
    if (left == 0) {
      if (rem == 0) out.push_back(cur);
      return;
    }
    for (std::size_t j = i; j < elems.size(); ++j) {
      if (elems[j] > rem) break;
      cur.push_back(elems[j]);
      rec(j + 1, left - 1, rem - elems[j]);
      cur.pop_back();
    }
  };
  rec(0, h, n);
  return out;
}

/// True maximum pairwise-disjoint subfamily by exhaustive subset search.
inline u64 brute_max_disjoint(const std::vector<std::vector<u64>>& reps) {
  u64 best = 0;
  std::size_t m = reps.size();
  if (m > 22) throw std::runtime_error("brute_max_disjoint: instance too large");
  for (u64 mask = 0; mask < (u64{1} << m); ++mask) {
    std::vector<u64> used;
    bool ok = true;
    unsigned cnt = 0;
    for (std::size_t i = 0; i < m && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      ++cnt;
      for (u64 v : reps[i]) {
        if (std::find(used.begin(), used.end(), v) != used.end()) { ok = false; break; }
        used.push_back(v);
      }
    }
    if (ok) best = std::max<u64>(best, cnt);
  }
  return best;
}

/// E over ordered tuples of Π α over distinct values, by direct recursion.
inline double brute_expected_r(const std::vector<double>& alpha, unsigned h, u64 n) {
  double total = 0.0;
  std::vector<u64> tuple(h);
  std::function<void(unsigned, u64)> rec = [&](unsigned d, u64 rem) {
    if (d == h) {
      if (rem != 0) return;
      double p = 1.0;
      for (unsigned i = 0; i < h; ++i) {
        bool seen = false;
        for (unsigned j = 0; j < i; ++j)
          if (tuple[j] == tuple[i]) { seen = true; break; }
        if (!seen) p *= alpha[static_cast<std::size_t>(tuple[i])];
      }
      total += p;
      return;
    }
    for (u64 v = 0; v <= rem && v < alpha.size(); ++v) {
      tuple[d] = v;
      rec(d + 1, rem - v);
    }
  };
  rec(0, n);
  return total;
}

inline double brute_expected_rho(const std::vector<double>& alpha, unsigned h, u64 n,
                                 u64 lb = 0) {
  double total = 0.0;
  std::function<void(u64, unsigned, u64, double)> rec = [&](u64 vmin, unsigned left, u64 rem,
                                                            double p) {
    if (left == 0) {
      if (rem == 0) total += p;
      return;
    }
    for (u64 v = vmin; v <= rem && v < alpha.size(); ++v)
      rec(v + 1, left - 1, rem - v, p * alpha[static_cast<std::size_t>(v)]);
  };
  rec(lb, h, n, 1.0);
  return total;
}

/// Singular integral by direct nested summation (h ≤ 3).
inline double brute_J(const std::function<double(u64)>& beta, unsigned h, u64 n) {
  if (h == 1) return beta(n);
  double acc = 0.0;
  if (h == 2) {
    for (u64 k = 0; k <= n; ++k) acc += beta(k) * beta(n - k);
    return acc;
  }
  for (u64 k1 = 0; k1 <= n; ++k1)
    for (u64 k2 = 0; k1 + k2 <= n; ++k2) acc += beta(k1) * beta(k2) * beta(n - k1 - k2);
  return acc;
}

inline std::vector<u64> sieve(u64 limit) {
  std::vector<bool> comp(static_cast<std::size_t>(limit) + 1, false);
  std::vector<u64> p;
  for (u64 i = 2; i <= limit; ++i) {
    if (comp[static_cast<std::size_t>(i)]) continue;
    p.push_back(i);
    for (u64 m = i * i; m <= limit; m += i) comp[static_cast<std::size_t>(m)] = true;
  }
  return p;
}

}  // namespace oracles
