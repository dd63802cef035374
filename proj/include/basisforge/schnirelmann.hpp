#pragma once

// Singular integral / singular series layer and the Cesàro basis criterion.
// The circle-method exponential-sum form reduces exactly, by orthonormality,
// to the convolution of the averaged indicator β_k = A(k)/(k+1); that
// convolution is computed directly here.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "basisforge/convolution.hpp"
#include "basisforge/core.hpp"
#include "basisforge/repfn.hpp"
#include "basisforge/sequence.hpp"

namespace basisforge {

namespace detail {

inline std::vector<double> beta_array(const Sequence& A, u64 n_max) {
  std::vector<double> beta(static_cast<std::size_t>(n_max) + 1);
  const auto& e = A.elements();
  std::size_t idx = 0;
  u64 cnt = 0;
  for (u64 n = 0; n <= n_max; ++n) {
    while (idx < e.size() && e[idx] <= n) { ++cnt; ++idx; }
    beta[static_cast<std::size_t>(n)] = static_cast<double>(cnt) / static_cast<double>(n + 1);
  }
  return beta;
}

}  // namespace detail

struct SingularIntegralResult {
  std::vector<double> j;  // J_{A,h}(n) for n = 0..n_max
  Band theta_band;        // J(n)·n/A(n)^h over the top half of a log grid
};

/// J as the h-fold convolution of β_k = A(k)/(k+1). Double precision; the
/// relative error is bounded by n_max·h·machine-epsilon, asserted < 1e-6.
inline SingularIntegralResult singular_integral(const Sequence& A, unsigned h, u64 n_max) {
  if (h < 1) throw std::invalid_argument("singular_integral: h must be >= 1");
  if (n_max > A.horizon()) throw std::out_of_range("singular_integral: n_max beyond horizon");
  double err_bound = static_cast<double>(n_max) * h * std::numeric_limits<double>::epsilon();
  if (err_bound >= 1e-6)
    throw std::invalid_argument("singular_integral: rounding budget exceeded at this n_max");
  SingularIntegralResult out;
  const std::size_t len = static_cast<std::size_t>(n_max) + 1;
  auto beta = detail::beta_array(A, n_max);
  out.j = beta;
  for (unsigned i = 2; i <= h; ++i) out.j = convolve_real(out.j, beta, len);

  if (n_max >= 32) {
    std::vector<double> ratios;
    for (u64 n : log_grid(std::max<u64>(16, n_max / 1000), n_max, 32)) {
      double an = static_cast<double>(A.count(n));
      if (an > 0.0)
        ratios.push_back(out.j[static_cast<std::size_t>(n)] * static_cast<double>(n) /
                         std::pow(an, static_cast<double>(h)));
    }
    if (!ratios.empty()) {
      std::vector<double> top(ratios.begin() + ratios.size() / 2, ratios.end());
      out.theta_band = band_of(top);
    }
  }
  return out;
}

/// r, J and the trivial-choice singular series 𝔖 = r/J (1 where J = 0),
/// so that r = 𝔖·J holds identically wherever J > 0.
struct SingularTable {
  unsigned h = 2;
  u64 n_max = 0;
  std::vector<u64> r;
  std::vector<double> j;
  std::vector<double> sigma;
};

inline SingularTable singular_series(const Sequence& A, unsigned h, u64 n_max) {
  SingularTable t;
  t.h = h;
  t.n_max = n_max;
  t.r = rep_table(A, h, n_max).r;
  t.j = singular_integral(A, h, n_max).j;
  t.sigma.resize(t.r.size());
  for (std::size_t n = 0; n < t.r.size(); ++n)
    t.sigma[n] = t.j[n] > 0.0 ? static_cast<double>(t.r[n]) / t.j[n] : 1.0;
  return t;
}

struct CesaroReport {
  double eps = 1.0;
  std::vector<u64> grid;
  std::vector<double> average;  // (1/x)·Σ_{n≤x} 𝔖(n)^{1+ε}
  double top_decade_max = 0.0;
  double mid_decade_max = 0.0;
  double bound = 1.2;  // bounded when top ≤ bound·mid
  bool bounded = false;
};

/// Cesàro averages of 𝔖^{1+ε} at log-spaced x. Boundedness is judged by the
/// plateau heuristic: the top decade's max must not exceed the mid decade's
/// max by more than the configured factor.
inline CesaroReport cesaro_criterion(const SingularTable& t, double eps,
                                     const std::vector<u64>& x_grid, double bound = 1.2) {
  CesaroReport rep;
  rep.eps = eps;
  rep.grid = x_grid;
  rep.bound = bound;
  double acc = 0.0;
  std::size_t gi = 0;
  for (u64 n = 1; n <= t.n_max && gi < x_grid.size(); ++n) {
    acc += std::pow(t.sigma[static_cast<std::size_t>(n)], 1.0 + eps);
    while (gi < x_grid.size() && x_grid[gi] == n) {
      rep.average.push_back(acc / static_cast<double>(n));
      ++gi;
    }
  }
  double top_x = static_cast<double>(x_grid.back());
  for (std::size_t i = 0; i < rep.average.size(); ++i) {
    double x = static_cast<double>(x_grid[i]);
    if (x >= top_x / 10.0)
      rep.top_decade_max = std::max(rep.top_decade_max, rep.average[i]);
    else if (x >= top_x / 100.0)
      rep.mid_decade_max = std::max(rep.mid_decade_max, rep.average[i]);
  }
  rep.bounded = rep.mid_decade_max > 0.0 && rep.top_decade_max <= bound * rep.mid_decade_max;
  return rep;
}

struct BasisReport {
  u64 x = 0;
  unsigned h_max = 0;
  std::vector<double> coverage;     // coverage[h−1] = |hA ∩ [0,x]| / (x+1)
  std::vector<u64> first_gap;       // first n ≤ x with no h-representation, or x+1
  unsigned order = 0;               // least h with full coverage, 0 if none
  double schnirelmann_density = 0;  // inf_{1≤n≤horizon} A(n)/n
};

/// Coverage of the h-fold sumsets on [0,x] for h ≤ h_max, plus the
/// Schnirelmann density of the truncation.
inline BasisReport basis_check(const Sequence& A, unsigned h_max, u64 x) {
  if (h_max < 1) throw std::invalid_argument("basis_check: h_max must be >= 1");
  if (u128(x) > u128(A.horizon()) * h_max)
    throw std::out_of_range("basis_check: x beyond horizon*h_max");
  BasisReport rep;
  rep.x = x;
  rep.h_max = h_max;
  const std::size_t len = static_cast<std::size_t>(x) + 1;
  auto ind = A.indicator(std::min(x, A.horizon()));
  ind.resize(len, 0);
  const u64 cnt = A.count(std::min(x, A.horizon()));
  std::vector<u64> r = ind;
  for (unsigned h = 1; h <= h_max; ++h) {
    if (h >= 2) r = convolve_exact(r, ind, len, detail::fold_bound(cnt, x, h));
    u64 covered = 0;
    u64 gap = x + 1;
    for (std::size_t n = 0; n < len; ++n) {
      if (r[n] > 0) ++covered;
      else if (gap == x + 1) gap = static_cast<u64>(n);
    }
    rep.coverage.push_back(static_cast<double>(covered) / static_cast<double>(len));
    rep.first_gap.push_back(gap);
    if (rep.order == 0 && covered == len) rep.order = h;
  }
  double dens = std::numeric_limits<double>::infinity();
  const auto& e = A.elements();
  std::size_t idx = 0;
  u64 c = 0;
  // A(n)/n is piecewise decreasing between jumps; the inf over [1, horizon]
  // is attained just before a jump or at the endpoint.
  for (u64 n = 1; n <= A.horizon(); ++n) {
    while (idx < e.size() && e[idx] <= n) { ++c; ++idx; }
    u64 next_jump = idx < e.size() ? e[idx] : A.horizon() + 1;
    u64 probe = std::min(next_jump - 1, A.horizon());
    dens = std::min(dens, static_cast<double>(c) / static_cast<double>(probe));
    if (probe >= A.horizon()) break;
    n = probe;
  }
  rep.schnirelmann_density = dens;
  return rep;
}

}  // namespace basisforge
