#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace basisforge {

inline constexpr const char* kVersion = "1.0.0";

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Thrown when an exact integer result would not fit the 64-bit count type.
class overflow_error : public std::runtime_error {
 public:
  explicit overflow_error(const std::string& what) : std::runtime_error(what) {}
};

inline u64 checked_add(u64 a, u64 b, const char* ctx) {
  u64 r = a + b;
  if (r < a) throw overflow_error(std::string(ctx) + ": 64-bit count overflow; retry with smaller h or n_max");
  return r;
}

inline u64 checked_mul(u64 a, u64 b, const char* ctx) {
  if (a != 0 && b > ~u64{0} / a)
    throw overflow_error(std::string(ctx) + ": 64-bit count overflow; retry with smaller h or n_max");
  return a * b;
}

inline u64 factorial_u64(unsigned h) {
  u64 f = 1;
  for (unsigned i = 2; i <= h; ++i) f = checked_mul(f, i, "factorial");
  return f;
}

inline u64 binomial_u64(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  u64 r = 1;
  for (unsigned i = 1; i <= k; ++i) r = checked_mul(r, n - k + i, "binomial") / i;
  return r;
}

// SplitMix64 finalizer. All randomness in this library is counter-based:
// a (seed, counter) pair maps to one 64-bit word, so replay is exact and
// independent of evaluation order.
inline u64 mix64(u64 z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline u64 hash_pair(u64 seed, u64 n) { return mix64(seed ^ mix64(n + 0x9E3779B97F4A7C15ull)); }

/// Uniform double in [0,1) from the top 53 bits.
inline double unit_double(u64 bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

/// seed_i for a master seed; documented so seed lists are reconstructible.
inline u64 split_seed(u64 master, u64 i) { return hash_pair(master, i); }

inline unsigned thread_count() {
  if (const char* env = std::getenv("BASIS_FORGE_THREADS")) {
    long v = std::atol(env);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

/// Runs fn(i) for i in [0, n). Results must be written to per-i slots; the
/// schedule never affects output.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                         unsigned threads = 0) {
  if (threads == 0) threads = thread_count();
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) break;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  unsigned use = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  pool.reserve(use);
  for (unsigned t = 0; t < use; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

/// Log-spaced integer grid in [lo, hi], deduplicated, endpoints included.
inline std::vector<u64> log_grid(u64 lo, u64 hi, std::size_t points) {
  if (lo < 1) lo = 1;
  if (hi < lo) throw std::invalid_argument("log_grid: hi < lo");
  if (points < 2) points = 2;
  std::vector<u64> g;
  double llo = std::log(static_cast<double>(lo));
  double lhi = std::log(static_cast<double>(hi));
  for (std::size_t i = 0; i < points; ++i) {
    double t = llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(points - 1);
    u64 x = static_cast<u64>(std::llround(std::exp(t)));
    if (x < lo) x = lo;
    if (x > hi) x = hi;
    if (g.empty() || x > g.back()) g.push_back(x);
  }
  return g;
}

struct Band {
  double lo = 0.0;
  double hi = 0.0;
  double ratio() const { return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity(); }
};

inline Band band_of(const std::vector<double>& v) {
  Band b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (double x : v) {
    if (x < b.lo) b.lo = x;
    if (x > b.hi) b.hi = x;
  }
  return b;
}

}  // namespace basisforge
