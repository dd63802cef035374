#pragma once

// The explicit construction pipeline: validate a target growth function,
// realize a seed sequence 𝒞 with C(x) = Θ(f(x)), run the greedy hybrid
// construction of 𝒜 between the density floor and ceiling, and measure
// concentration of r_{ω,h+ℓ} in 𝒮_𝒜.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "basisforge/core.hpp"
#include "basisforge/prob.hpp"
#include "basisforge/repfn.hpp"
#include "basisforge/sequence.hpp"

namespace basisforge {

enum class TargetKind { power_log_h, power, power_over_log, tabulated };

/// Growth target f on [x0, ∞). power_log_h is x^{1/h}·log(x)^{1/h}; power is
/// x^beta; power_over_log is x^beta/log(x)^eps_log.
struct TargetFunction {
  TargetKind kind = TargetKind::power_log_h;
  unsigned h = 2;
  double beta = 0.5;
  double eps_log = 0.5;
  double x0 = 2.0;
  std::function<double(double)> table;  // for tabulated targets

  double operator()(double x) const {
    x = std::max(x, x0);
    switch (kind) {
      case TargetKind::power_log_h:
        return std::pow(x * std::log(x), 1.0 / static_cast<double>(h));
      case TargetKind::power:
        return std::pow(x, beta);
      case TargetKind::power_over_log:
        return std::pow(x, beta) / std::pow(std::log(x), eps_log);
      case TargetKind::tabulated:
        return table(x);
    }
    return 0.0;
  }
};

inline TargetFunction parse_target(const std::string& text, unsigned h) {
  TargetFunction f;
  f.h = h;
  auto starts = [&](const char* p) { return text.rfind(p, 0) == 0; };
  if (text == "power-log") f.kind = TargetKind::power_log_h;
  else if (starts("power:")) {
    f.kind = TargetKind::power;
    f.beta = std::stod(text.substr(6));
  } else if (starts("power-over-log:")) {
    f.kind = TargetKind::power_over_log;
    auto body = text.substr(15);
    auto comma = body.find(',');
    f.beta = std::stod(body.substr(0, comma));
    f.eps_log = comma == std::string::npos ? 0.5 : std::stod(body.substr(comma + 1));
  } else {
    throw std::invalid_argument("unknown target function: " + text);
  }
  return f;
}

struct TargetValidation {
  // condition (i): Σ_{x0<n≤x} f(n)/n against f(x)
  std::vector<u64> grid;
  std::vector<double> integral_ratio;
  Band integral_band;     // over the top half
  double drift = 0.0;     // last-quarter mean over previous-quarter mean
  bool integral_ok = false;
  // condition (ii): envelope ratios
  Band lower_envelope;    // f(x)/(x^{1/h}·log(x)^{1/h})
  Band upper_envelope;    // f(x)·log(x)^ε/x^{1/(h−1)}
  double lower_drift = 0.0, upper_drift = 0.0;
  bool envelope_ok = false;
  bool ok = false;
};

struct TargetValidationConfig {
  double band_max = 4.0;    // max/min bound for the integral ratio band
  double drift_tol = 0.10;  // tolerated quarter-over-quarter drift
  double eps_log = 0.5;     // the log(x)^ε in the upper envelope
  std::size_t grid_points = 64;
};

inline TargetValidation validate_target(const TargetFunction& f, u64 x_lo, u64 x_hi,
                                        const TargetValidationConfig& cfg = {}) {
  TargetValidation v;
  u64 lo = std::max<u64>(x_lo, static_cast<u64>(f.x0) + 1);
  v.grid = log_grid(lo, x_hi, cfg.grid_points);
  double sum = 0.0;
  std::size_t gi = 0;
  for (u64 n = lo; n <= x_hi && gi < v.grid.size(); ++n) {
    double fn = f(static_cast<double>(n));
    if (!(fn > 0.0)) throw std::invalid_argument("validate_target: f must be positive");
    sum += fn / static_cast<double>(n);
    while (gi < v.grid.size() && v.grid[gi] == n) {
      v.integral_ratio.push_back(sum / f(static_cast<double>(n)));
      ++gi;
    }
  }

  auto quarter_mean = [&](const std::vector<double>& r, int q) {
    std::size_t n = r.size();
    std::size_t b = n * q / 4, e = n * (q + 1) / 4;
    double s = 0.0;
    for (std::size_t i = b; i < e; ++i) s += r[i];
    return e > b ? s / static_cast<double>(e - b) : 0.0;
  };
  std::vector<double> top(v.integral_ratio.begin() + v.integral_ratio.size() / 2,
                          v.integral_ratio.end());
  v.integral_band = band_of(top);
  v.drift = quarter_mean(v.integral_ratio, 3) / std::max(quarter_mean(v.integral_ratio, 2), 1e-300);
  v.integral_ok =
      v.integral_band.ratio() <= cfg.band_max && std::abs(std::log(v.drift)) <= cfg.drift_tol;

  double hh = static_cast<double>(f.h);
  std::vector<double> lo_ratio, up_ratio;
  for (u64 n : v.grid) {
    double x = static_cast<double>(n);
    double fx = f(x);
    lo_ratio.push_back(fx / std::pow(x * std::log(x), 1.0 / hh));
    double upper_env = f.h >= 2 ? std::pow(x, 1.0 / (hh - 1.0)) : x * 10.0;
    up_ratio.push_back(fx * std::pow(std::log(x), cfg.eps_log) / upper_env);
  }
  v.lower_envelope = band_of(lo_ratio);
  v.upper_envelope = band_of(up_ratio);
  v.lower_drift = quarter_mean(lo_ratio, 3) / std::max(quarter_mean(lo_ratio, 2), 1e-300);
  v.upper_drift = quarter_mean(up_ratio, 3) / std::max(quarter_mean(up_ratio, 2), 1e-300);
  // lower envelope must not decay, upper must not grow
  v.envelope_ok = v.lower_drift >= 1.0 - cfg.drift_tol && v.upper_drift <= 1.0 + cfg.drift_tol;
  v.ok = v.integral_ok && v.envelope_ok;
  return v;
}

struct SeedSequenceResult {
  Sequence c;
  u64 x_star = 0;      // below this, αₙ was clamped to 1
  double k_hat = 0.0;  // measured sup of f(n)/n
  Band theta_band;     // C(x)/f(x) over the top decade
};

/// Samples 𝒞 from the clamped target assignment and reports C(x) = Θ(f(x))
/// evidence on the top decade.
inline SeedSequenceResult seed_sequence(const TargetFunction& f, u64 seed, u64 horizon,
                                        double eps = 0.1) {
  SeedSequenceResult out;
  auto fn = [&f](double x) { return f(x); };
  auto pa = target_assignment(fn, horizon, eps, static_cast<u64>(f.x0));
  for (u64 n = 0; n <= horizon; ++n)
    if (pa.alpha[static_cast<std::size_t>(n)] < 1.0) { out.x_star = n; break; }
  out.c = sample(pa, seed).omega;
  std::vector<double> ratios;
  for (u64 x : log_grid(std::max<u64>(horizon / 10, 1), horizon, 16))
    ratios.push_back(static_cast<double>(out.c.count(x)) / f(static_cast<double>(x)));
  out.theta_band = band_of(ratios);
  return out;
}

/// M₁ density-floor / M₂ density-ceiling constants for the construction.
struct ConstructionParams {
  double m1 = 2.0;
  double m2 = 2.0;
};

struct ConstructionResult {
  Sequence a;
  u64 n1 = 0;              // stabilization point; scan starts at n1+1
  double q1 = 0.0;         // measured inf of C(x)/(x^{1/h}log(x)^{1/h}), top decade
  double q2 = 0.0;         // measured sup of C(x)/x^{1/(h−1)}, construction range
  u64 sandwich_from = 0;   // first n past which both sandwich bounds hold
  Band theta_band;         // A(x)/C(x) over the top decade
};

namespace detail {

inline double floor_envelope(double x, unsigned h) {
  return std::pow(x * std::log(x), 1.0 / static_cast<double>(h));
}

inline double ceil_envelope(double x, unsigned h) {
  return std::pow(x, 1.0 / static_cast<double>(h - 1));
}

/// First index from which both discrete-increment inequalities hold and keep
/// holding for 64 consecutive steps.
inline u64 stabilization_point(unsigned h, const ConstructionParams& p, u64 horizon) {
  u64 streak = 0;
  for (u64 n = 3; n < horizon; ++n) {
    double x = static_cast<double>(n);
    bool ok1 = p.m1 * floor_envelope(x, h) + 1.0 > p.m1 * floor_envelope(x + 1.0, h);
    bool ok2 = ceil_envelope(x, h) / p.m2 + 1.0 > ceil_envelope(x + 1.0, h) / p.m2;
    streak = (ok1 && ok2) ? streak + 1 : 0;
    if (streak >= 64) return n - 63;
  }
  throw std::invalid_argument("hybrid_construct: no stabilization point below horizon");
}

}  // namespace detail

/// The greedy scan: fillers (k ∉ 𝒞) are added while the count sits at or
/// under the M₁ floor envelope; 𝒞-elements are dropped once the count would
/// reach the 1/M₂ ceiling envelope, kept otherwise.
inline ConstructionResult hybrid_construct(const Sequence& C, unsigned h,
                                           const ConstructionParams& params) {
  if (h < 2) throw std::invalid_argument("hybrid_construct: h must be >= 2");
  if (!(params.m1 > 1.0 && params.m2 > 1.0))
    throw std::invalid_argument("hybrid_construct: need M1, M2 > 1");
  const u64 H = C.horizon();
  ConstructionResult out;
  out.n1 = detail::stabilization_point(h, params, H);

  // measured envelope certificate constants of 𝒞 over the construction
  // range: q1 = inf of the lower-envelope ratio, q2 = sup of the upper
  out.q1 = std::numeric_limits<double>::infinity();
  out.q2 = 0.0;
  for (u64 x : log_grid(2, H, 512)) {
    double cx = static_cast<double>(C.count(x));
    out.q1 = std::min(out.q1, cx / detail::floor_envelope(static_cast<double>(x), h));
    out.q2 = std::max(out.q2, cx / detail::ceil_envelope(static_cast<double>(x), h));
  }
  if (!(params.m1 * params.m2 > out.q1 / out.q2))
    throw std::invalid_argument(
        "hybrid_construct: M1*M2 <= q1/q2 for the measured envelope constants (" +
        std::to_string(out.q1 / out.q2) + "); increase M1 or M2");

  // sandwich feasibility: the envelopes cross once; the crossover must sit
  // well inside the range, else the construction has no room
  {
    u64 last_bad = 0;
    for (u64 n = out.n1 + 1; n <= H; ++n) {
      double x = static_cast<double>(n);
      if (params.m1 * detail::floor_envelope(x, h) >
          detail::ceil_envelope(x, h) / params.m2 + 1.0)
        last_bad = n;
    }
    if (last_bad > out.n1 + (H - out.n1) / 4)
      throw std::invalid_argument("hybrid_construct: sandwich empty through n=" +
                                  std::to_string(last_bad) + "; decrease M1 or M2");
  }

  std::vector<u64> elems;
  for (u64 k = 1; k <= std::min(out.n1, H); ++k) elems.push_back(k);
  u64 count = elems.size();
  const auto& ce = C.elements();
  std::size_t ci = std::upper_bound(ce.begin(), ce.end(), out.n1) - ce.begin();
  for (u64 k = out.n1 + 1; k <= H; ++k) {
    bool in_c = ci < ce.size() && ce[ci] == k;
    if (in_c) ++ci;
    double x = static_cast<double>(k);
    if (!in_c) {
      if (static_cast<double>(count) / detail::floor_envelope(x, h) <= params.m1) {
        elems.push_back(k);
        ++count;
      }
    } else {
      if (static_cast<double>(count + 1) / detail::ceil_envelope(x, h) >= 1.0 / params.m2) {
        // ceiling met; drop k
      } else {
        elems.push_back(k);
        ++count;
      }
    }
  }
  out.a = Sequence(std::move(elems), H);

  // machine-check the sandwich pointwise and report the threshold
  out.sandwich_from = H + 1;
  {
    u64 last_bad = out.n1;
    const auto& ae = out.a.elements();
    std::size_t ai = 0;
    u64 cnt = 0;
    for (u64 n = 1; n <= H; ++n) {
      while (ai < ae.size() && ae[ai] <= n) { ++cnt; ++ai; }
      if (n <= out.n1) continue;
      double x = static_cast<double>(n);
      bool ok = params.m1 * detail::floor_envelope(x, h) <= static_cast<double>(cnt) &&
                static_cast<double>(cnt) <= detail::ceil_envelope(x, h) / params.m2;
      if (!ok) last_bad = n;
    }
    out.sandwich_from = last_bad + 1;
  }

  std::vector<double> ratios;
  for (u64 x : log_grid(std::max<u64>(H / 10, 1), H, 16)) {
    double cn = static_cast<double>(C.count(x));
    if (cn > 0.0) ratios.push_back(static_cast<double>(out.a.count(x)) / cn);
  }
  out.theta_band = band_of(ratios);
  return out;
}

// ---------------------------------------------------------------------------
// End-to-end concentration experiment

struct ConcentrationSeedResult {
  u64 seed = 0;
  u64 n_zero = 0;  // r_{ω,h}(n) > 0 for every n in (n_zero, n_max]
  std::vector<std::vector<u64>> r_at_grid;  // [ℓ][grid index]
};

struct ConcentrationReport {
  unsigned h = 2;
  unsigned ell_max = 0;
  std::vector<u64> grid;
  std::vector<u64> seeds;
  u64 construction_seed = 0;
  ConstructionResult construction;
  std::vector<ConcentrationSeedResult> per_seed;
  // per ℓ: band of r_{ω,h+ℓ}(n)·n/A(n)^{h+ℓ} pooled across seeds and grid
  std::vector<Band> ratio_band;
  std::vector<double> positive_fraction;  // fraction of grid points with r > 0
  bool product_rule_ok = false;           // r_{t₁+t₂} = r_{t₁} ⊛ r_{t₂} on a sample
};

struct ConcentrationConfig {
  ConstructionParams params;
  double seed_eps = 0.1;
  u64 construction_seed = 1;
  unsigned threads = 0;
};

inline ConcentrationReport concentration_experiment(const TargetFunction& f, unsigned h,
                                                    unsigned ell_max,
                                                    const std::vector<u64>& seeds,
                                                    const std::vector<u64>& n_grid,
                                                    const ConcentrationConfig& cfg = {}) {
  if (n_grid.empty() || seeds.empty())
    throw std::invalid_argument("concentration_experiment: empty grid or seed list");
  ConcentrationReport rep;
  rep.h = h;
  rep.ell_max = ell_max;
  rep.grid = n_grid;
  rep.seeds = seeds;
  rep.construction_seed = cfg.construction_seed;
  const u64 nmax = n_grid.back();

  auto seeded = seed_sequence(f, cfg.construction_seed, nmax, cfg.seed_eps);
  rep.construction = hybrid_construct(seeded.c, h, cfg.params);
  const Sequence& A = rep.construction.a;
  auto pa = counting_assignment(A, nmax);

  rep.per_seed.resize(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t si) {
    ConcentrationSeedResult r;
    r.seed = seeds[si];
    SampleRun run = sample(pa, seeds[si]);
    auto r2 = detail::r2_table_sparse(run.omega, nmax);
    u64 last_zero = 0;
    if (h == 2) {
      for (u64 n = 0; n <= nmax; ++n)
        if (r2[static_cast<std::size_t>(n)] == 0) last_zero = n;
    } else {
      auto rh = rep_table(run.omega, h, nmax);
      for (u64 n = 0; n <= nmax; ++n)
        if (rh.r[static_cast<std::size_t>(n)] == 0) last_zero = n;
    }
    r.n_zero = last_zero;
    r.r_at_grid.resize(ell_max + 1);
    for (unsigned l = 0; l <= ell_max; ++l) {
      r.r_at_grid[l].resize(n_grid.size());
      for (std::size_t i = 0; i < n_grid.size(); ++i)
        r.r_at_grid[l][i] = detail::rep_count_at(run.omega, r2, h + l, n_grid[i]);
    }
    rep.per_seed[si] = std::move(r);
  }, cfg.threads);

  rep.ratio_band.resize(ell_max + 1);
  rep.positive_fraction.resize(ell_max + 1);
  for (unsigned l = 0; l <= ell_max; ++l) {
    std::vector<double> pool;
    std::size_t positive = 0, totals = 0;
    for (const auto& psr : rep.per_seed) {
      for (std::size_t i = 0; i < n_grid.size(); ++i) {
        u64 rv = psr.r_at_grid[l][i];
        ++totals;
        if (rv > 0) ++positive;
        double an = static_cast<double>(A.count(n_grid[i]));
        pool.push_back(static_cast<double>(rv) * static_cast<double>(n_grid[i]) /
                       std::pow(an, static_cast<double>(h + l)));
      }
    }
    rep.ratio_band[l] = band_of(pool);
    rep.positive_fraction[l] =
        static_cast<double>(positive) / static_cast<double>(std::max<std::size_t>(totals, 1));
  }

  // product rule on the first sample: r_{2h} = r_h ⊛ r_h exactly
  {
    SampleRun run = sample(pa, seeds.front());
    u64 m = std::min<u64>(nmax, 4000);
    auto t1 = rep_table(run.omega.truncated(m), h, m);
    auto t2 = rep_table(run.omega.truncated(m), 2 * h, m);
    auto conv = convolve_exact(t1.r, t1.r, static_cast<std::size_t>(m) + 1,
                               detail::fold_bound(run.omega.count(m), m, 2 * h));
    rep.product_rule_ok = std::equal(conv.begin(), conv.end(), t2.r.begin());
  }
  return rep;
}

}  // namespace basisforge
