#pragma once

// Finite-sample O-regular-variation diagnostics: Matuszewska index
// estimation from dyadic stretch ratios, OR / PI / OR+ classification, and
// the duality / sumset-scaling / integral-criterion cross-checks.
//
// The indices themselves are asymptotic objects; everything here is a
// bracketing estimate on a finite window. Estimates are exact for pure
// powers and bracket the truth for sampled truncations.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "basisforge/core.hpp"
#include "basisforge/repfn.hpp"
#include "basisforge/sequence.hpp"

namespace basisforge {

/// A window statistic kept as evidence for a verdict.
struct EvidenceWindow {
  double x = 0.0;
  double lambda = 0.0;
  double statistic = 0.0;
  std::string kind;
};

struct IndexEstimate {
  double m_lower = 0.0;
  double m_upper = 0.0;
  bool lower_degenerate = false;  // estimate indistinguishable from 0
  bool upper_unbounded = false;   // stretch ratios kept growing with the window
  std::vector<EvidenceWindow> evidence;
};

struct MatuszewskaConfig {
  std::vector<double> lambdas = {2.0, 4.0, 8.0};
  std::size_t points_per_decade = 128;
  double degenerate_eps = 1e-3;
};

/// Bracketing index estimates for a sampled positive function on
/// [x_min, x_max]: m_upper = max over λ of sup_x log(f(λx)/f(x))/log λ,
/// m_lower the min/inf analogue. The scan is restricted to the top half of
/// the log-range to damp small-x transients.
inline IndexEstimate matuszewska_estimate(const std::function<double(double)>& f, double x_min,
                                          double x_max,
                                          const MatuszewskaConfig& cfg = {}) {
  if (!(x_max >= 16.0 * x_min) || x_min <= 0.0)
    throw std::invalid_argument("matuszewska_estimate: need x_max >= 16*x_min > 0");
  x_min = std::sqrt(x_min * x_max);
  IndexEstimate est;
  est.m_lower = std::numeric_limits<double>::infinity();
  est.m_upper = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (double lam : cfg.lambdas) {
    double hi = x_max / lam;
    if (hi < x_min) continue;
    double decades = std::log10(hi / x_min);
    std::size_t pts = std::max<std::size_t>(
        2, static_cast<std::size_t>(decades * static_cast<double>(cfg.points_per_decade)) + 2);
    double sup = -std::numeric_limits<double>::infinity();
    double inf = std::numeric_limits<double>::infinity();
    double sup_x = x_min, inf_x = x_min;
    for (std::size_t i = 0; i < pts; ++i) {
      double x = x_min * std::pow(hi / x_min, static_cast<double>(i) / (pts - 1));
      double fx = f(x);
      double fl = f(lam * x);
      if (!(fx > 0.0) || !(fl > 0.0))
        throw std::invalid_argument("matuszewska_estimate: samples must be positive");
      double stat = std::log(fl / fx) / std::log(lam);
      if (stat > sup) { sup = stat; sup_x = x; }
      if (stat < inf) { inf = stat; inf_x = x; }
    }
    any = true;
    est.evidence.push_back({sup_x, lam, sup, "sup log-ratio"});
    est.evidence.push_back({inf_x, lam, inf, "inf log-ratio"});
    est.m_upper = std::max(est.m_upper, sup);
    est.m_lower = std::min(est.m_lower, inf);
  }
  if (!any) throw std::invalid_argument("matuszewska_estimate: empty window");
  est.lower_degenerate = est.m_lower < cfg.degenerate_eps;
  return est;
}

inline std::function<double(double)> counting_fn(const Sequence& A) {
  return [&A](double x) {
    u64 xi = x < 0.0 ? 0 : static_cast<u64>(x);
    return static_cast<double>(A.count(std::min(xi, A.horizon())));
  };
}

struct ClassifyConfig {
  u64 min_horizon = 1024;
  double or_bound = 8.0;     // sup A(2x)/A(x) at or below this => OR
  double pi_margin = 0.05;   // inf A(λx)/A(x) at least 1+margin => PI
  double pi_lambda = 8.0;
  // Estimation window: [horizon^window_exponent, horizon]. The default keeps
  // enough of the tail to damp small-x transients at desk horizons.
  double window_exponent = 0.65;
  double window_floor = 64.0;
  MatuszewskaConfig matuszewska;
};

struct RegularityReport {
  IndexEstimate indices;
  bool is_OR = false;
  bool is_PI = false;
  bool is_OR_plus = false;
  double or_statistic = 0.0;  // sup of A(2x)/A(x) over the window
  double pi_statistic = 0.0;  // inf of A(λx)/A(x) over the window
  double x_min = 0.0, x_max = 0.0;
  std::vector<EvidenceWindow> evidence;
};

inline RegularityReport classify(const Sequence& A, const ClassifyConfig& cfg = {}) {
  if (A.horizon() < cfg.min_horizon)
    throw std::invalid_argument("classify: horizon below min_horizon");
  RegularityReport rep;
  double H = static_cast<double>(A.horizon());
  rep.x_max = H;
  rep.x_min = std::max(cfg.window_floor, std::pow(H, cfg.window_exponent));
  // make sure the window starts after the first element
  if (!A.empty()) rep.x_min = std::max(rep.x_min, static_cast<double>(A.element(0)) + 1.0);
  auto f = counting_fn(A);

  auto scan = [&](double lam, bool want_sup) {
    double hi = rep.x_max / lam;
    double best = want_sup ? -1.0 : std::numeric_limits<double>::infinity();
    double best_x = rep.x_min;
    double decades = std::log10(std::max(hi / rep.x_min, 1.0001));
    std::size_t pts = std::max<std::size_t>(
        2, static_cast<std::size_t>(decades *
                                    static_cast<double>(cfg.matuszewska.points_per_decade)) + 2);
    for (std::size_t i = 0; i < pts; ++i) {
      double x = rep.x_min * std::pow(hi / rep.x_min, static_cast<double>(i) / (pts - 1));
      double ratio = f(lam * x) / f(x);
      if (want_sup ? ratio > best : ratio < best) { best = ratio; best_x = x; }
    }
    rep.evidence.push_back({best_x, lam, best, want_sup ? "sup ratio" : "inf ratio"});
    return best;
  };

  rep.or_statistic = scan(2.0, true);
  rep.pi_statistic = scan(cfg.pi_lambda, false);
  rep.is_OR = rep.or_statistic <= cfg.or_bound;
  rep.is_PI = rep.pi_statistic >= 1.0 + cfg.pi_margin;
  rep.is_OR_plus = rep.is_OR && rep.is_PI;
  rep.indices = matuszewska_estimate(f, rep.x_min, rep.x_max, cfg.matuszewska);
  return rep;
}

// ---------------------------------------------------------------------------
// Duality: M_low(A) = 1/M_upp(a), M_upp(A) = 1/M_low(a)

struct DualitySide {
  double lhs = 0.0;  // index of the counting function
  double rhs = 0.0;  // reciprocal index of the element function
  bool lhs_zero = false, rhs_unbounded = false;
  double diff = 0.0;
  bool ok = false;
};

struct DualityReport {
  IndexEstimate counting;  // A-side estimates, kept for evidence access
  DualitySide low_side;    // M_low(A) vs 1/M_upp(a)
  DualitySide upp_side;    // M_upp(A) vs 1/M_low(a)
  bool ok = false;
};

inline DualityReport duality_check(const Sequence& A, double tolerance = 0.1,
                                   const ClassifyConfig& cfg = {}) {
  DualityReport rep;
  double H = static_cast<double>(A.horizon());
  double x_min = std::max(cfg.window_floor, std::pow(H, cfg.window_exponent));
  if (!A.empty()) x_min = std::max(x_min, static_cast<double>(A.element(0)) + 1.0);
  auto est_a = matuszewska_estimate(counting_fn(A), x_min, H, cfg.matuszewska);
  rep.counting = est_a;

  // element side: n ↦ a_⌊n⌋ over indices matching the x-window
  u64 n_lo = std::max<u64>(1, A.count(static_cast<u64>(x_min)));
  u64 n_hi = A.size() - 1;
  if (n_hi < 16 * n_lo) n_lo = std::max<u64>(1, n_hi / 64);
  auto elem_fn = [&A](double u) {
    std::size_t i = static_cast<std::size_t>(u);
    if (i >= A.size()) i = A.size() - 1;
    return std::max(1.0, static_cast<double>(A.element(i)));
  };
  auto est_e = matuszewska_estimate(elem_fn, static_cast<double>(n_lo),
                                    static_cast<double>(n_hi), cfg.matuszewska);

  const double zero_eps = cfg.matuszewska.degenerate_eps;
  auto side = [&](double cnt_idx, double elem_idx) {
    DualitySide s;
    s.lhs = cnt_idx;
    s.lhs_zero = cnt_idx < zero_eps;
    s.rhs_unbounded = elem_idx < zero_eps;
    s.rhs = s.rhs_unbounded ? std::numeric_limits<double>::infinity() : 1.0 / elem_idx;
    if (s.lhs_zero || s.rhs_unbounded) {
      // degenerate pairs compare symbolically: estimate 0 matches 1/∞
      s.diff = std::numeric_limits<double>::infinity();
      s.ok = s.lhs_zero == s.rhs_unbounded;
    } else {
      s.diff = std::abs(s.lhs - s.rhs);
      s.ok = s.diff <= tolerance;
    }
    return s;
  };
  rep.low_side = side(est_a.m_lower, est_e.m_upper);
  rep.upp_side = side(est_a.m_upper, est_e.m_lower);
  rep.ok = rep.low_side.ok && rep.upp_side.ok;
  return rep;
}

// ---------------------------------------------------------------------------
// Sumset index scaling: indices of s_{A,h} against h× the indices of A

struct SumsetIndexReport {
  unsigned h = 2;
  double s_lower = 0.0, s_upper = 0.0;
  double a_lower = 0.0, a_upper = 0.0;
  double diff_lower = 0.0, diff_upper = 0.0;
  bool ok = false;
};

inline SumsetIndexReport sumset_index_check(const Sequence& A, unsigned h, u64 n_max = 0,
                                            double tolerance = 0.1,
                                            const ClassifyConfig& cfg = {}) {
  if (n_max == 0) n_max = A.horizon();
  RepTable t = rep_table(A, h, n_max);
  SumsetIndexReport rep;
  rep.h = h;
  double H = static_cast<double>(n_max);
  double x_min = std::max(cfg.window_floor, std::pow(H, cfg.window_exponent));
  auto s_fn = [&t](double x) {
    u64 xi = std::min<u64>(static_cast<u64>(std::max(x, 0.0)), t.n_max);
    return std::max(1.0, static_cast<double>(t.s[static_cast<std::size_t>(xi)]));
  };
  auto est_s = matuszewska_estimate(s_fn, x_min, H, cfg.matuszewska);
  auto est_a = matuszewska_estimate(counting_fn(A), x_min, H, cfg.matuszewska);
  rep.s_lower = est_s.m_lower;
  rep.s_upper = est_s.m_upper;
  rep.a_lower = est_a.m_lower;
  rep.a_upper = est_a.m_upper;
  rep.diff_lower = std::abs(est_s.m_lower - h * est_a.m_lower);
  rep.diff_upper = std::abs(est_s.m_upper - h * est_a.m_upper);
  rep.ok = rep.diff_lower <= tolerance * h && rep.diff_upper <= tolerance * h;
  return rep;
}

// ---------------------------------------------------------------------------
// OR+ integral criterion: S(x) = Σ_{1≤n≤x} A(n)/n = Θ(A(x))?

struct IntegralCriterionReport {
  std::vector<u64> grid;
  std::vector<double> ratio;  // S(x)/A(x)
  Band band;                  // over the top half of the log-grid
  double band_bound = 8.0;
  bool bounded = false;
};

inline IntegralCriterionReport orplus_integral_check(const Sequence& A,
                                                     std::size_t grid_points = 48,
                                                     double band_bound = 8.0) {
  if (A.horizon() < 1000)
    throw std::invalid_argument("orplus_integral_check: horizon must be >= 1000");
  IntegralCriterionReport rep;
  rep.band_bound = band_bound;
  u64 lo = std::max<u64>(16, A.empty() ? 16 : A.element(0) + 1);
  rep.grid = log_grid(lo, A.horizon(), grid_points);
  rep.ratio.reserve(rep.grid.size());
  double S = 0.0;
  std::size_t gi = 0;
  std::size_t idx = 0;
  u64 cnt = 0;
  const auto& e = A.elements();
  for (u64 n = 1; n <= A.horizon() && gi < rep.grid.size(); ++n) {
    while (idx < e.size() && e[idx] <= n) { ++cnt; ++idx; }
    S += static_cast<double>(cnt) / static_cast<double>(n);
    while (gi < rep.grid.size() && rep.grid[gi] == n) {
      rep.ratio.push_back(cnt > 0 ? S / static_cast<double>(cnt)
                                  : std::numeric_limits<double>::infinity());
      ++gi;
    }
  }
  std::vector<double> top(rep.ratio.begin() + rep.ratio.size() / 2, rep.ratio.end());
  rep.band = band_of(top);
  rep.bounded = rep.band.ratio() <= band_bound;
  return rep;
}

}  // namespace basisforge
