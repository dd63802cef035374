#pragma once

// Finite truncations of integer sequences with counting-function access,
// plus the built-in generators used throughout the experiments.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "basisforge/core.hpp"

namespace basisforge {

/// Strictly increasing truncation of an integer sequence. Membership is
/// fully known on [0, horizon]; queries beyond the horizon are rejected.
/// Immutable after construction, safe to share across workers.
class Sequence {
 public:
  Sequence() : horizon_(0) {}

  Sequence(std::vector<u64> elements, u64 horizon)
      : elems_(std::move(elements)), horizon_(horizon) {
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      if (i > 0 && elems_[i] <= elems_[i - 1])
        throw std::invalid_argument("Sequence: elements must be strictly increasing");
      if (elems_[i] > horizon_)
        throw std::invalid_argument("Sequence: element beyond horizon");
    }
  }

  u64 horizon() const { return horizon_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const std::vector<u64>& elements() const { return elems_; }

  /// aₙ, the n-th smallest element.
  u64 element(std::size_t n) const {
    if (n >= elems_.size()) throw std::out_of_range("Sequence::element: index out of range");
    return elems_[n];
  }

  /// Counting function A(x) = |A ∩ [0,x]|.
  u64 count(u64 x) const {
    check_range(x);
    return static_cast<u64>(std::upper_bound(elems_.begin(), elems_.end(), x) - elems_.begin());
  }

  bool contains(u64 x) const {
    check_range(x);
    return std::binary_search(elems_.begin(), elems_.end(), x);
  }

  /// 0/1 membership array on [0, n_max].
  std::vector<u64> indicator(u64 n_max) const {
    check_range(n_max);
    std::vector<u64> ind(static_cast<std::size_t>(n_max) + 1, 0);
    for (u64 a : elems_) {
      if (a > n_max) break;
      ind[static_cast<std::size_t>(a)] = 1;
    }
    return ind;
  }

  Sequence truncated(u64 new_horizon) const {
    check_range(new_horizon);
    std::vector<u64> e(elems_.begin(),
                       std::upper_bound(elems_.begin(), elems_.end(), new_horizon));
    return Sequence(std::move(e), new_horizon);
  }

 private:
  void check_range(u64 x) const {
    if (x > horizon_)
      throw std::out_of_range("Sequence: query at " + std::to_string(x) +
                              " beyond horizon " + std::to_string(horizon_));
  }

  std::vector<u64> elems_;
  u64 horizon_;
};

enum class GeneratorKind {
  naturals,
  squares,
  cubes,
  kth_powers,
  primes,
  primes01,        // primes together with {0,1}
  polynomial,
  explicit_file,
  counterexample_c,
  counterexample_d,
  composition,
};

/// Integer-valued polynomial (Σ cᵢ xⁱ)/den with positive leading coefficient.
struct PolynomialSpec {
  std::vector<long long> coeffs;  // c₀, c₁, ..., c_deg
  long long den = 1;
};

/// Scale parameters for the alternating-block counterexample. Block j has
/// boundary g_j = tower_base^(2^j) and progression step k_j − 1 with
/// k_j = index_base·2^j; the tower is compressed relative to the source
/// construction so the block mechanism is visible at desk horizons.
struct CounterexampleCScale {
  u64 tower_base = 1024;
  u64 index_base = 512;
};

/// Scale for the cubes-plus-blocks counterexample: dense blocks
/// [g³, g³ + g²] at g = tower_base^(2^k), k = 0, 1, ....
struct CounterexampleDScale {
  u64 tower_base = 3;
};

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::naturals;
  u64 horizon = 0;

  unsigned power_k = 2;                       // kth_powers
  PolynomialSpec poly;                        // polynomial
  std::string path;                           // explicit_file
  CounterexampleCScale c_scale;               // counterexample_c
  CounterexampleDScale d_scale;               // counterexample_d
  std::shared_ptr<GeneratorSpec> outer, inner;  // composition L[A]: outer = L
};

Sequence generate(const GeneratorSpec& spec);

namespace detail {

inline std::vector<u64> sieve_primes(u64 limit) {
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  std::vector<u64> primes;
  for (u64 p = 2; p <= limit; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    primes.push_back(p);
    for (u64 m = p * p; m <= limit; m += p) composite[static_cast<std::size_t>(m)] = true;
  }
  return primes;
}

inline std::vector<u64> kth_powers_upto(unsigned k, u64 horizon) {
  std::vector<u64> v;
  for (u64 b = 0;; ++b) {
    u64 p = 1;
    bool over = false;
    for (unsigned i = 0; i < k; ++i) {
      if (b != 0 && p > horizon / b) { over = true; break; }
      p *= b;
    }
    if (over || p > horizon) break;
    v.push_back(p);
    if (b >= 1 && p == horizon) break;
  }
  return v;
}

// A degree-d polynomial is integer-valued on ℤ iff it is integral at d+1
// consecutive integers.
inline void validate_polynomial(const PolynomialSpec& p) {
  if (p.coeffs.empty() || p.coeffs.back() <= 0)
    throw std::invalid_argument("polynomial: positive leading coefficient required");
  if (p.den <= 0) throw std::invalid_argument("polynomial: denominator must be positive");
  long long deg = static_cast<long long>(p.coeffs.size()) - 1;
  for (long long n = 0; n <= deg; ++n) {
    long long acc = 0;
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * n + *it;
    if (acc % p.den != 0)
      throw std::invalid_argument("polynomial: not integer-valued on the integers");
  }
}

inline std::vector<u64> polynomial_values(const PolynomialSpec& p, u64 horizon) {
  validate_polynomial(p);
  // Past the Cauchy bound on the derivative's roots the polynomial is
  // increasing, so we can stop at the first beyond-horizon value there.
  double lead = static_cast<double>(p.coeffs.back()) * static_cast<double>(p.coeffs.size() - 1);
  double cauchy = 1.0;
  for (std::size_t i = 1; i + 1 < p.coeffs.size(); ++i) {
    double c = std::abs(static_cast<double>(p.coeffs[i]) * static_cast<double>(i)) / lead;
    cauchy = std::max(cauchy, 1.0 + c);
  }
  std::vector<u64> vals;
  for (u64 n = 0;; ++n) {
    double est = 0.0;
    long long acc = 0;
    bool exact = true;
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
      est = est * static_cast<double>(n) + static_cast<double>(*it);
      if (exact) {
        if (std::abs(est) > 9.0e17) exact = false;
        else acc = acc * static_cast<long long>(n) + *it;
      }
    }
    double v_est = est / static_cast<double>(p.den);
    if (!exact || v_est > 1.8e19) {
      if (static_cast<double>(n) > cauchy) break;
      continue;
    }
    long long v = acc / p.den;
    if (v >= 0 && static_cast<u64>(v) <= horizon) vals.push_back(static_cast<u64>(v));
    if (static_cast<double>(n) > cauchy && (v < 0 || static_cast<u64>(v) > horizon)) break;
  }
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

inline void append_run(std::vector<u64>& v, u64 lo, u64 hi, u64 horizon) {
  lo = std::min(lo, horizon + 1);
  hi = std::min(hi, horizon);
  for (u64 x = lo; x <= hi; ++x) v.push_back(x);
}

inline std::vector<u64> counterexample_c_elements(const CounterexampleCScale& s, u64 horizon) {
  if (s.tower_base < 4) throw std::invalid_argument("counterexample-C: tower_base must be >= 4");
  if (s.index_base < 2) throw std::invalid_argument("counterexample-C: index_base must be >= 2");
  std::vector<u64> v;
  append_run(v, 0, s.tower_base, horizon);  // dense prefix [0, g₀]
  u64 g = s.tower_base;
  u64 k = s.index_base;
  while (g <= horizon) {
    if (k > g) throw std::invalid_argument("counterexample-C: index_base too large for tower_base");
    // progression {g + (k−1)t : 0 ≤ t ≤ g}
    u64 step = k - 1;
    for (u64 t = 1; t <= g; ++t) {
      u64 x = g + step * t;
      if (x > horizon) break;
      v.push_back(x);
    }
    // dense interval [k·g, g²]
    u64 kg = (k > horizon / g) ? horizon + 1 : k * g;
    u64 g2 = (g > horizon / g) ? horizon : g * g;
    if (kg <= horizon) append_run(v, kg, g2, horizon);
    if (g > horizon / g) break;
    g = g * g;
    k = k * 2;
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline std::vector<u64> counterexample_d_elements(const CounterexampleDScale& s, u64 horizon) {
  if (s.tower_base < 2) throw std::invalid_argument("counterexample-D: tower_base must be >= 2");
  std::vector<u64> v = kth_powers_upto(3, horizon);
  u64 g = s.tower_base;
  for (;;) {
    if (g > 2642245 || g * g * g > horizon) break;  // 2642245³ overflows u64
    u64 base = g * g * g;
    append_run(v, base, base + g * g, horizon);
    if (g > horizon / g) break;
    g = g * g;
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline Sequence parse_sequence_file(const std::string& path, u64 declared_horizon) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("explicit-file: cannot open " + path);
  std::vector<u64> v;
  std::optional<u64> header_horizon;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto pos = line.find("horizon=");
      if (pos != std::string::npos) header_horizon = std::stoull(line.substr(pos + 8));
      continue;
    }
    std::istringstream ss(line);
    long long x;
    if (!(ss >> x) || x < 0)
      throw std::invalid_argument("explicit-file: malformed line " + std::to_string(lineno));
    std::string rest;
    if (ss >> rest)
      throw std::invalid_argument("explicit-file: trailing data on line " + std::to_string(lineno));
    if (!v.empty() && static_cast<u64>(x) <= v.back())
      throw std::invalid_argument("explicit-file: non-increasing data at line " + std::to_string(lineno));
    v.push_back(static_cast<u64>(x));
  }
  u64 horizon = declared_horizon;
  if (header_horizon) horizon = *header_horizon;
  if (horizon == 0 && !v.empty()) horizon = v.back();  // defaults to last element
  if (!v.empty() && horizon < v.back())
    throw std::invalid_argument("explicit-file: declared horizon below last element");
  return Sequence(std::move(v), horizon);
}

}  // namespace detail

inline Sequence generate(const GeneratorSpec& spec) {
  if (spec.kind != GeneratorKind::explicit_file && spec.horizon < 1)
    throw std::invalid_argument("generate: horizon must be >= 1");
  const u64 H = spec.horizon;
  switch (spec.kind) {
    case GeneratorKind::naturals: {
      std::vector<u64> v(static_cast<std::size_t>(H) + 1);
      std::iota(v.begin(), v.end(), u64{0});
      return Sequence(std::move(v), H);
    }
    case GeneratorKind::squares:
      return Sequence(detail::kth_powers_upto(2, H), H);
    case GeneratorKind::cubes:
      return Sequence(detail::kth_powers_upto(3, H), H);
    case GeneratorKind::kth_powers:
      if (spec.power_k < 1) throw std::invalid_argument("kth-powers: k must be >= 1");
      return Sequence(detail::kth_powers_upto(spec.power_k, H), H);
    case GeneratorKind::primes:
      return Sequence(detail::sieve_primes(H), H);
    case GeneratorKind::primes01: {
      std::vector<u64> v{0, 1};
      auto p = detail::sieve_primes(H);
      v.insert(v.end(), p.begin(), p.end());
      return Sequence(std::move(v), H);
    }
    case GeneratorKind::polynomial:
      return Sequence(detail::polynomial_values(spec.poly, H), H);
    case GeneratorKind::explicit_file:
      return detail::parse_sequence_file(spec.path, spec.horizon);
    case GeneratorKind::counterexample_c:
      return Sequence(detail::counterexample_c_elements(spec.c_scale, H), H);
    case GeneratorKind::counterexample_d:
      return Sequence(detail::counterexample_d_elements(spec.d_scale, H), H);
    case GeneratorKind::composition: {
      if (!spec.outer || !spec.inner)
        throw std::invalid_argument("composition: outer and inner specs required");
      GeneratorSpec outer = *spec.outer;
      outer.horizon = H;
      Sequence L = generate(outer);
      if (L.empty()) return Sequence({}, H);
      const u64 max_index = L.size() - 1;  // inner elements index into L
      GeneratorSpec inner = *spec.inner;
      inner.horizon = std::max<u64>(1, max_index);
      Sequence A = generate(inner);
      if (A.horizon() > max_index) A = A.truncated(max_index);
      std::vector<u64> v;
      v.reserve(A.size());
      for (u64 a : A.elements()) v.push_back(L.element(static_cast<std::size_t>(a)));
      return Sequence(std::move(v), H);
    }
  }
  throw std::logic_error("generate: unknown kind");
}

/// Parses the CLI generator grammar, e.g. "squares", "kth-powers:4",
/// "poly:0,1,1/2", "file:path", "counterexample-c:1024,512",
/// "counterexample-d:3", "composition(squares;naturals)".
inline GeneratorSpec parse_generator(const std::string& text, u64 horizon);

namespace detail {
inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) { out.push_back(cur); cur.clear(); }
    else cur.push_back(c);
  }
  out.push_back(cur);
  return out;
}
}  // namespace detail

inline GeneratorSpec parse_generator(const std::string& text, u64 horizon) {
  GeneratorSpec g;
  g.horizon = horizon;
  auto starts = [&](const char* p) { return text.rfind(p, 0) == 0; };
  if (text == "naturals") g.kind = GeneratorKind::naturals;
  else if (text == "squares") g.kind = GeneratorKind::squares;
  else if (text == "cubes") g.kind = GeneratorKind::cubes;
  else if (text == "primes") g.kind = GeneratorKind::primes;
  else if (text == "primes01") g.kind = GeneratorKind::primes01;
  else if (starts("kth-powers:")) {
    g.kind = GeneratorKind::kth_powers;
    g.power_k = static_cast<unsigned>(std::stoul(text.substr(11)));
  } else if (starts("poly:")) {
    g.kind = GeneratorKind::polynomial;
    std::string body = text.substr(5);
    auto slash = body.find('/');
    if (slash != std::string::npos) {
      g.poly.den = std::stoll(body.substr(slash + 1));
      body = body.substr(0, slash);
    }
    for (auto& tok : detail::split(body, ',')) g.poly.coeffs.push_back(std::stoll(tok));
  } else if (starts("file:")) {
    g.kind = GeneratorKind::explicit_file;
    g.path = text.substr(5);
  } else if (starts("counterexample-c")) {
    g.kind = GeneratorKind::counterexample_c;
    if (text.size() > 17 && text[16] == ':') {
      auto parts = detail::split(text.substr(17), ',');
      g.c_scale.tower_base = std::stoull(parts.at(0));
      if (parts.size() > 1) g.c_scale.index_base = std::stoull(parts.at(1));
    }
  } else if (starts("counterexample-d")) {
    g.kind = GeneratorKind::counterexample_d;
    if (text.size() > 17 && text[16] == ':') g.d_scale.tower_base = std::stoull(text.substr(17));
  } else if (starts("composition(") && text.back() == ')') {
    std::string body = text.substr(12, text.size() - 13);
    int depth = 0;
    std::size_t sep = std::string::npos;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i] == '(') ++depth;
      else if (body[i] == ')') --depth;
      else if (body[i] == ';' && depth == 0) { sep = i; break; }
    }
    if (sep == std::string::npos)
      throw std::invalid_argument("composition: expected composition(outer;inner)");
    g.kind = GeneratorKind::composition;
    g.outer = std::make_shared<GeneratorSpec>(parse_generator(body.substr(0, sep), horizon));
    g.inner = std::make_shared<GeneratorSpec>(parse_generator(body.substr(sep + 1), horizon));
  } else {
    throw std::invalid_argument("unknown generator: " + text);
  }
  return g;
}

inline std::string generator_name(const GeneratorSpec& g) {
  switch (g.kind) {
    case GeneratorKind::naturals: return "naturals";
    case GeneratorKind::squares: return "squares";
    case GeneratorKind::cubes: return "cubes";
    case GeneratorKind::kth_powers: return "kth-powers:" + std::to_string(g.power_k);
    case GeneratorKind::primes: return "primes";
    case GeneratorKind::primes01: return "primes01";
    case GeneratorKind::polynomial: return "polynomial";
    case GeneratorKind::explicit_file: return "file:" + g.path;
    case GeneratorKind::counterexample_c:
      return "counterexample-c:" + std::to_string(g.c_scale.tower_base) + "," +
             std::to_string(g.c_scale.index_base);
    case GeneratorKind::counterexample_d:
      return "counterexample-d:" + std::to_string(g.d_scale.tower_base);
    case GeneratorKind::composition:
      return "composition(" + generator_name(*g.outer) + ";" + generator_name(*g.inner) + ")";
  }
  return "?";
}

}  // namespace basisforge
