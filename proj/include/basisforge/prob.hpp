#pragma once

// The random-sequence spaces: seeded order-independent sampling, exact
// expectations of representation functions (symmetric-function identities
// evaluated by real convolution), and the empirical checks built on them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "basisforge/convolution.hpp"
#include "basisforge/core.hpp"
#include "basisforge/regvar.hpp"
#include "basisforge/repfn.hpp"
#include "basisforge/sequence.hpp"

namespace basisforge {

/// The sequence (αₙ) defining a random-sequence space: Pr(n ∈ ω) = αₙ,
/// all memberships independent.
struct ProbabilityAssignment {
  std::vector<double> alpha;  // index 0..n_max
  std::string source;

  u64 n_max() const { return alpha.empty() ? 0 : static_cast<u64>(alpha.size()) - 1; }

  /// Partial sum Σαₙ over the horizon; the finite-sample properness proxy.
  double proper_sum() const { return std::accumulate(alpha.begin(), alpha.end(), 0.0); }

  void validate() const {
    for (double a : alpha)
      if (!(a >= 0.0 && a <= 1.0))
        throw std::invalid_argument("ProbabilityAssignment: alpha outside [0,1]");
  }
};

inline ProbabilityAssignment uniform_assignment(double p, u64 n_max) {
  ProbabilityAssignment pa;
  pa.alpha.assign(static_cast<std::size_t>(n_max) + 1, p);
  pa.source = "uniform:" + std::to_string(p);
  pa.validate();
  return pa;
}

/// αₙ = A(n)/(n+1), the space induced by a counting function.
inline ProbabilityAssignment counting_assignment(const Sequence& A, u64 n_max = 0) {
  if (n_max == 0) n_max = A.horizon();
  if (n_max > A.horizon())
    throw std::out_of_range("counting_assignment: n_max beyond horizon");
  ProbabilityAssignment pa;
  pa.alpha.resize(static_cast<std::size_t>(n_max) + 1);
  std::size_t idx = 0;
  u64 cnt = 0;
  const auto& e = A.elements();
  for (u64 n = 0; n <= n_max; ++n) {
    while (idx < e.size() && e[idx] <= n) { ++cnt; ++idx; }
    pa.alpha[static_cast<std::size_t>(n)] =
        static_cast<double>(cnt) / static_cast<double>(n + 1);
  }
  pa.source = "counting";
  return pa;
}

/// Clamped target assignment: αₙ = 1 below x*, min(1, f(n)/((K+ε)n)) after,
/// with K the measured sup of f(n)/n and x* the first point past which
/// f(n) ≤ (K+ε)n holds for good.
inline ProbabilityAssignment target_assignment(const std::function<double(double)>& f,
                                               u64 n_max, double eps = 0.1, u64 x0 = 2) {
  double K = 0.0;
  for (u64 n = std::max<u64>(x0, 2); n <= n_max; ++n) {
    double v = f(static_cast<double>(n)) / static_cast<double>(n);
    if (v > K) K = v;
  }
  double scale = K + eps;
  u64 x_star = n_max + 1;
  for (u64 n = n_max;; --n) {
    if (n < std::max<u64>(x0, 2) ||
        f(static_cast<double>(n)) > scale * static_cast<double>(n)) {
      x_star = n + 1;
      break;
    }
    if (n == 0) break;
  }
  ProbabilityAssignment pa;
  pa.alpha.resize(static_cast<std::size_t>(n_max) + 1);
  for (u64 n = 0; n <= n_max; ++n) {
    if (n < x_star) {
      pa.alpha[static_cast<std::size_t>(n)] = 1.0;
    } else {
      double a = f(static_cast<double>(n)) / (scale * static_cast<double>(n));
      pa.alpha[static_cast<std::size_t>(n)] = std::clamp(a, 0.0, 1.0);
    }
  }
  pa.source = "target";
  pa.validate();
  return pa;
}

/// Space of 𝓛-subsequences: αₙ = A(L(n)−1)/L(n)·𝟙_𝓛(n).
inline ProbabilityAssignment composition_assignment(const Sequence& L, const Sequence& A,
                                                    u64 n_max = 0) {
  if (n_max == 0) n_max = L.horizon();
  if (L.count(n_max) >= 1 && A.horizon() + 1 < L.count(n_max))
    throw std::invalid_argument("composition_assignment: A horizon too small for L counts");
  ProbabilityAssignment pa;
  pa.alpha.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (u64 n = 0; n <= n_max; ++n) {
    if (!L.contains(n)) continue;
    u64 Ln = L.count(n);  // ≥ 1 here
    pa.alpha[static_cast<std::size_t>(n)] =
        static_cast<double>(A.count(Ln - 1)) / static_cast<double>(Ln);
  }
  pa.source = "composition";
  pa.validate();
  return pa;
}

/// One realized random sequence. Membership of n is a pure function of
/// (seed, n, αₙ), so replay is exact and order-independent.
struct SampleRun {
  u64 seed = 0;
  Sequence omega;
  std::string assignment;  // source descriptor of the assignment sampled from
};

inline bool sample_member(u64 seed, u64 n, double alpha_n) {
  return unit_double(hash_pair(seed, n)) < alpha_n;
}

inline SampleRun sample(const ProbabilityAssignment& pa, u64 seed) {
  SampleRun run;
  run.seed = seed;
  run.assignment = pa.source;
  std::vector<u64> elems;
  const u64 nmax = pa.n_max();
  for (u64 n = 0; n <= nmax; ++n)
    if (sample_member(seed, n, pa.alpha[static_cast<std::size_t>(n)])) elems.push_back(n);
  run.omega = Sequence(std::move(elems), nmax);
  return run;
}

// ---------------------------------------------------------------------------
// Strong-law check

struct StrongLawReport {
  std::vector<u64> checkpoints;
  std::vector<double> expected;       // E(W(x)) = Σ_{n≤x} αₙ
  std::vector<double> max_deviation;  // max over seeds of |W(x)/E(W(x)) − 1|
  double tolerance = 0.1;
  bool ok = false;
};

inline StrongLawReport strong_law_check(const ProbabilityAssignment& pa,
                                        const std::vector<u64>& seeds,
                                        std::vector<u64> checkpoints, double tolerance = 0.1,
                                        unsigned threads = 0) {
  if (pa.proper_sum() < 10.0)
    throw std::invalid_argument(
        "strong_law_check: assignment looks improper (partial sum of alpha < 10); "
        "a bounded sum cannot prescribe growth");
  std::sort(checkpoints.begin(), checkpoints.end());
  if (!checkpoints.empty() && checkpoints.back() > pa.n_max())
    throw std::out_of_range("strong_law_check: checkpoint beyond assignment range");
  StrongLawReport rep;
  rep.checkpoints = checkpoints;
  rep.tolerance = tolerance;
  rep.expected.resize(checkpoints.size());
  {
    double acc = 0.0;
    std::size_t ci = 0;
    for (u64 n = 0; n <= pa.n_max() && ci < checkpoints.size(); ++n) {
      acc += pa.alpha[static_cast<std::size_t>(n)];
      while (ci < checkpoints.size() && checkpoints[ci] == n) rep.expected[ci++] = acc;
    }
  }
  std::vector<std::vector<double>> dev(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t si) {
    std::vector<double> d(checkpoints.size(), 0.0);
    u64 w = 0;
    std::size_t ci = 0;
    for (u64 n = 0; n <= pa.n_max() && ci < checkpoints.size(); ++n) {
      if (sample_member(seeds[si], n, pa.alpha[static_cast<std::size_t>(n)])) ++w;
      while (ci < checkpoints.size() && checkpoints[ci] == n) {
        double e = rep.expected[ci];
        d[ci] = e > 0.0 ? std::abs(static_cast<double>(w) / e - 1.0)
                        : (w == 0 ? 0.0 : std::numeric_limits<double>::infinity());
        ++ci;
      }
    }
    dev[si] = std::move(d);
  }, threads);
  rep.max_deviation.assign(checkpoints.size(), 0.0);
  for (const auto& d : dev)
    for (std::size_t i = 0; i < d.size(); ++i)
      rep.max_deviation[i] = std::max(rep.max_deviation[i], d[i]);
  rep.ok = rep.max_deviation.empty() || rep.max_deviation.back() < tolerance;
  return rep;
}

// ---------------------------------------------------------------------------
// Exact expectations
//
// E(ρ_h(n)) is the degree-h elementary symmetric slice of Π_v (1 + α_v x^v),
// evaluated through Newton's identities with power sums p_j[j·v] = α_v^j.
// E(r_h(n)) decomposes over kernel set partitions of the h tuple positions,
// each term an injective-values sum handled by Möbius inversion on the
// partition lattice; every piece reduces to real convolutions.

namespace detail {

inline std::vector<double> power_sum_array(const std::vector<double>& alpha, unsigned weight,
                                           unsigned expo, u64 n_max, u64 lb) {
  std::vector<double> g(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (u64 v = lb; v * weight <= n_max && v < alpha.size(); ++v) {
    double a = alpha[static_cast<std::size_t>(v)];
    if (a == 0.0) continue;
    double p = a;
    for (unsigned i = 1; i < expo; ++i) p *= a;
    g[static_cast<std::size_t>(v * weight)] = p;
  }
  return g;
}

inline void partitions_of_int(unsigned h, std::vector<std::vector<unsigned>>& out) {
  std::vector<unsigned> cur;
  std::function<void(unsigned, unsigned)> rec = [&](unsigned rem, unsigned maxpart) {
    if (rem == 0) { out.push_back(cur); return; }
    for (unsigned p = std::min(rem, maxpart); p >= 1; --p) {
      cur.push_back(p);
      rec(rem - p, p);
      cur.pop_back();
    }
  };
  rec(h, h);
}

/// All set partitions of {0..t−1} as block lists.
inline void set_partitions(unsigned t, std::vector<std::vector<std::vector<unsigned>>>& out) {
  std::vector<std::vector<unsigned>> blocks;
  std::function<void(unsigned)> rec = [&](unsigned i) {
    if (i == t) { out.push_back(blocks); return; }
    std::size_t existing = blocks.size();  // recursion grows the list
    for (std::size_t j = 0; j < existing; ++j) {
      blocks[j].push_back(i);
      rec(i + 1);
      blocks[j].pop_back();
    }
    blocks.push_back({i});
    rec(i + 1);
    blocks.pop_back();
  };
  rec(0);
}

}  // namespace detail

/// Table of E(ρ_h(n)) for n ≤ n_max, parts restricted to values ≥ lower_bound.
inline std::vector<double> expected_rho_table(const ProbabilityAssignment& pa, unsigned h,
                                              u64 n_max, u64 lower_bound = 0) {
  if (h < 1 || h > 5) throw std::invalid_argument("expected_rho_table: h must be in [1,5]");
  const std::size_t len = static_cast<std::size_t>(n_max) + 1;
  std::vector<std::vector<double>> p(h + 1), e(h + 1);
  for (unsigned j = 1; j <= h; ++j)
    p[j] = detail::power_sum_array(pa.alpha, j, j, n_max, lower_bound);
  e[0].assign(len, 0.0);
  e[0][0] = 1.0;
  for (unsigned j = 1; j <= h; ++j) {
    std::vector<double> acc(len, 0.0);
    for (unsigned i = 1; i <= j; ++i) {
      auto term = convolve_real(p[i], e[j - i], len);
      double sign = (i % 2 == 1) ? 1.0 : -1.0;
      for (std::size_t x = 0; x < len; ++x) acc[x] += sign * term[x];
    }
    e[j].resize(len);
    for (std::size_t x = 0; x < len; ++x) e[j][x] = acc[x] / static_cast<double>(j);
  }
  return e[h];
}

/// Table of E(r_h(n)) for n ≤ n_max.
inline std::vector<double> expected_r_table(const ProbabilityAssignment& pa, unsigned h,
                                            u64 n_max) {
  if (h < 1 || h > 5) throw std::invalid_argument("expected_r_table: h must be in [1,5]");
  const std::size_t len = static_cast<std::size_t>(n_max) + 1;
  if (h == 1) {
    std::vector<double> out(pa.alpha.begin(),
                            pa.alpha.begin() + std::min<std::size_t>(len, pa.alpha.size()));
    out.resize(len, 0.0);
    return out;
  }

  std::vector<std::vector<unsigned>> lambdas;
  detail::partitions_of_int(h, lambdas);

  // cache of value arrays by (weight, exponent)
  std::vector<std::vector<double>> cache(( h + 1) * (h + 1));
  auto garr = [&](unsigned w, unsigned ex) -> const std::vector<double>& {
    auto& slot = cache[w * (h + 1) + ex];
    if (slot.empty()) slot = detail::power_sum_array(pa.alpha, w, ex, n_max, 0);
    return slot;
  };

  std::vector<double> total(len, 0.0);
  for (const auto& lam : lambdas) {
    unsigned t = static_cast<unsigned>(lam.size());
    // number of set partitions of [h] with this block-size profile
    double s_count = 1.0;
    {
      double hf = 1.0;
      for (unsigned i = 2; i <= h; ++i) hf *= i;
      double denom = 1.0;
      for (unsigned part : lam) {
        double pf = 1.0;
        for (unsigned i = 2; i <= part; ++i) pf *= i;
        denom *= pf;
      }
      unsigned run = 1;
      for (std::size_t i = 1; i <= lam.size(); ++i) {
        if (i < lam.size() && lam[i] == lam[i - 1]) { ++run; continue; }
        for (unsigned i2 = 2; i2 <= run; ++i2) denom *= i2;
        run = 1;
      }
      s_count = hf / denom;
    }

    // injective-values sum over t slots with weights lam, by Möbius
    // inversion over slot coincidences
    std::vector<std::vector<std::vector<unsigned>>> sigmas;
    detail::set_partitions(t, sigmas);
    std::vector<double> v_lambda(len, 0.0);
    for (const auto& sigma : sigmas) {
      double mu = 1.0;
      std::vector<double> u;
      for (const auto& block : sigma) {
        unsigned bsz = static_cast<unsigned>(block.size());
        for (unsigned i = 1; i < bsz; ++i) mu *= -static_cast<double>(i);
        unsigned w = 0;
        for (unsigned slot : block) w += lam[slot];
        const auto& g = garr(w, bsz);
        u = u.empty() ? g : convolve_real(u, g, len);
      }
      for (std::size_t x = 0; x < len; ++x) v_lambda[x] += mu * u[x];
    }
    for (std::size_t x = 0; x < len; ++x) total[x] += s_count * v_lambda[x];
  }
  return total;
}

/// E(r_{ω,h}(n)): Σ over ordered h-tuples summing to n of Π over the
/// distinct values of α (repeats contribute once, 𝟙² = 𝟙).
inline double expected_r_exact(const ProbabilityAssignment& pa, unsigned h, u64 n) {
  return expected_r_table(pa, h, n)[static_cast<std::size_t>(n)];
}

/// E(ρ_{ω,h}(n)|_{≥lower_bound}).
inline double expected_rho_exact(const ProbabilityAssignment& pa, unsigned h, u64 n,
                                 u64 lower_bound = 0) {
  return expected_rho_table(pa, h, n, lower_bound)[static_cast<std::size_t>(n)];
}

// ---------------------------------------------------------------------------
// Reports built on the expectations

struct ThetaBandReport {
  std::vector<u64> grid;
  std::vector<double> ratio;  // statistic per grid point
  Band band;                  // over the top half of the grid
  double band_max = 25.0;
  bool theta_ok = false;
  bool orplus_warning = false;  // set when the base sequence fails OR+ checks
};

/// Ratio E(r_{ω,h}(n))·n/A(n)^h across a grid in 𝒮_A. A non-OR+ base
/// sequence only raises a warning flag; the ratios are still reported.
inline ThetaBandReport theta_band_check(const Sequence& A, unsigned h,
                                               const std::vector<u64>& n_grid,
                                               double band_max = 25.0) {
  ThetaBandReport rep;
  rep.grid = n_grid;
  rep.band_max = band_max;
  if (n_grid.empty()) return rep;
  if (A.horizon() >= 1024) {
    auto reg = classify(A);
    rep.orplus_warning = !reg.is_OR_plus;
  }
  auto pa = counting_assignment(A, n_grid.back());
  auto er = expected_r_table(pa, h, n_grid.back());
  rep.ratio.reserve(n_grid.size());
  for (u64 n : n_grid) {
    double an = static_cast<double>(A.count(n));
    double denom = std::pow(an, static_cast<double>(h));
    rep.ratio.push_back(er[static_cast<std::size_t>(n)] * static_cast<double>(n) / denom);
  }
  std::vector<double> top(rep.ratio.begin() + rep.ratio.size() / 2, rep.ratio.end());
  rep.band = band_of(top);
  rep.theta_ok = rep.band.ratio() <= band_max;
  return rep;
}

struct RestrictionDeficiencyReport {
  std::vector<double> eps_list;
  std::vector<u64> grid;
  // deficiency[e][i] = 1 − E(ρ|≥εn)/E(ρ) at (eps_list[e], grid[i])
  std::vector<std::vector<double>> deficiency;
  bool monotone_in_eps = false;
  double empirical_exponent = 0.0;  // slope of log def vs log ε at the top n
  double gamma_over_pow = 0.0;      // reference γ/2^{h−2}
};

inline RestrictionDeficiencyReport restriction_deficiency_check(const Sequence& A, unsigned h, std::vector<double> eps_list,
                               const std::vector<u64>& n_grid, double gamma = 0.0) {
  std::sort(eps_list.begin(), eps_list.end());
  RestrictionDeficiencyReport rep;
  rep.eps_list = eps_list;
  rep.grid = n_grid;
  if (n_grid.empty()) return rep;
  auto pa = counting_assignment(A, n_grid.back());
  rep.deficiency.assign(eps_list.size(), std::vector<double>(n_grid.size(), 0.0));
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    u64 n = n_grid[i];
    double full = expected_rho_exact(pa, h, n, 0);
    for (std::size_t e = 0; e < eps_list.size(); ++e) {
      u64 lb = static_cast<u64>(std::ceil(eps_list[e] * static_cast<double>(n)));
      double cut = expected_rho_exact(pa, h, n, lb);
      rep.deficiency[e][i] = full > 0.0 ? 1.0 - cut / full : 0.0;
    }
  }
  rep.monotone_in_eps = true;
  for (std::size_t i = 0; i < n_grid.size(); ++i)
    for (std::size_t e = 1; e < eps_list.size(); ++e)
      if (rep.deficiency[e][i] + 1e-12 < rep.deficiency[e - 1][i]) rep.monotone_in_eps = false;
  if (eps_list.size() >= 2) {
    std::size_t last = n_grid.size() - 1;
    double d0 = rep.deficiency.front()[last], d1 = rep.deficiency.back()[last];
    if (d0 > 0.0 && d1 > 0.0)
      rep.empirical_exponent = std::log(d1 / d0) / std::log(eps_list.back() / eps_list.front());
  }
  rep.gamma_over_pow = h >= 2 ? gamma / std::pow(2.0, static_cast<double>(h - 2)) : gamma;
  return rep;
}

// ---------------------------------------------------------------------------
// Monte Carlo

namespace detail {

/// r_{ω,2} table on [0, n_max] from a realized (typically sparse) sequence.
inline std::vector<u64> r2_table_sparse(const Sequence& omega, u64 n_max) {
  const auto& e = omega.elements();
  if (e.size() > 20000) {  // dense realization: pair enumeration loses to NTT
    auto ind = omega.indicator(n_max);
    return convolve_exact(ind, ind, static_cast<std::size_t>(n_max) + 1,
                          fold_bound(omega.count(n_max), n_max, 2));
  }
  std::vector<u64> r2(static_cast<std::size_t>(n_max) + 1, 0);
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (2 * e[i] <= n_max) r2[static_cast<std::size_t>(2 * e[i])] += 1;
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      u64 s = e[i] + e[j];
      if (s > n_max) break;
      r2[static_cast<std::size_t>(s)] += 2;
    }
  }
  return r2;
}

/// r_{ω,j}(n) at single points, using the r₂ table for the heavy lifting.
inline u64 rep_count_at(const Sequence& omega, const std::vector<u64>& r2, unsigned j, u64 n) {
  if (j == 1) return n <= omega.horizon() && omega.contains(n) ? 1 : 0;
  if (j == 2) return r2[static_cast<std::size_t>(n)];
  if (j == 3) {
    u64 acc = 0;
    for (u64 a : omega.elements()) {
      if (a > n) break;
      acc = checked_add(acc, r2[static_cast<std::size_t>(n - a)], "rep_count_at");
    }
    return acc;
  }
  if (j == 4) {
    u64 acc = 0;
    for (u64 u = 0; u <= n; ++u) {
      u64 a = r2[static_cast<std::size_t>(u)];
      if (a == 0) continue;
      acc = checked_add(acc, checked_mul(a, r2[static_cast<std::size_t>(n - u)], "rep_count_at"),
                        "rep_count_at");
    }
    return acc;
  }
  // beyond 4-fold: exact table (rare path)
  return rep_table(omega, j, n).r[static_cast<std::size_t>(n)];
}

}  // namespace detail

struct MonteCarloPoint {
  u64 n = 0;
  double expected = 0.0;  // exact E(r)
  double mean = 0.0;
  double se = 0.0;  // standard error of the Monte Carlo mean
  u64 min = 0, max = 0;
  double ratio = 0.0;  // mean / expected
};

struct MonteCarloReport {
  unsigned h = 2;
  std::vector<u64> seeds;
  std::vector<MonteCarloPoint> points;
  std::size_t within_4se = 0;  // grid points with |mean − expected| ≤ 4·SE
  double fraction_within_4se = 0.0;
};

/// Samples ω from 𝒮_A and compares realized r_{ω,h} on the grid against the
/// exact expectation, with CLT error bands on the Monte Carlo mean.
inline MonteCarloReport monte_carlo_rep(const Sequence& A, unsigned h,
                                        const std::vector<u64>& n_grid,
                                        const std::vector<u64>& seeds, unsigned threads = 0) {
  MonteCarloReport rep;
  rep.h = h;
  rep.seeds = seeds;
  if (n_grid.empty() || seeds.empty()) return rep;
  const u64 nmax = n_grid.back();
  auto pa = counting_assignment(A, nmax);
  auto er = expected_r_table(pa, h, nmax);

  std::vector<std::vector<u64>> values(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t si) {
    SampleRun run = sample(pa, seeds[si]);
    auto r2 = detail::r2_table_sparse(run.omega, nmax);
    std::vector<u64> v(n_grid.size());
    for (std::size_t i = 0; i < n_grid.size(); ++i)
      v[i] = detail::rep_count_at(run.omega, r2, h, n_grid[i]);
    values[si] = std::move(v);
  }, threads);

  rep.points.resize(n_grid.size());
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    MonteCarloPoint& pt = rep.points[i];
    pt.n = n_grid[i];
    pt.expected = er[static_cast<std::size_t>(n_grid[i])];
    double sum = 0.0, sq = 0.0;
    pt.min = ~u64{0};
    pt.max = 0;
    for (std::size_t si = 0; si < seeds.size(); ++si) {
      double x = static_cast<double>(values[si][i]);
      sum += x;
      sq += x * x;
      pt.min = std::min(pt.min, values[si][i]);
      pt.max = std::max(pt.max, values[si][i]);
    }
    double m = sum / static_cast<double>(seeds.size());
    double var = std::max(0.0, sq / static_cast<double>(seeds.size()) - m * m);
    pt.mean = m;
    pt.se = std::sqrt(var / static_cast<double>(seeds.size()));
    pt.ratio = pt.expected > 0.0 ? m / pt.expected : 0.0;
    double slack = 4.0 * std::max(pt.se, 1e-12);
    if (std::abs(m - pt.expected) <= slack) ++rep.within_4se;
  }
  rep.fraction_within_4se =
      static_cast<double>(rep.within_4se) / static_cast<double>(rep.points.size());
  return rep;
}

/// Σ_{ℓ=1}^{h−2} Σ_{k≤n} E(ρ_ℓ(k))·E(ρ_{h−ℓ}(n−k))², the pairwise-overlap
/// bound Δ(n) from the correlation-inequality step. Empty sum for h = 2.
inline double delta_overlap_bound(const Sequence& A, unsigned h, u64 n) {
  if (h < 2) throw std::invalid_argument("delta_overlap_bound: h must be >= 2");
  if (h == 2) return 0.0;
  auto pa = counting_assignment(A, n);
  double total = 0.0;
  for (unsigned l = 1; l + 2 <= h; ++l) {
    auto el = expected_rho_table(pa, l, n);
    auto ehl = expected_rho_table(pa, h - l, n);
    for (u64 k = 0; k <= n; ++k) {
      double b = ehl[static_cast<std::size_t>(n - k)];
      total += el[static_cast<std::size_t>(k)] * b * b;
    }
  }
  return total;
}

}  // namespace basisforge
