#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "basisforge/repfn.hpp"
#include "support/oracles.hpp"

using namespace basisforge;

namespace {
Sequence random_sparse(std::mt19937_64& rng, u64 horizon, double density) {
  std::vector<u64> elems;
  for (u64 n = 0; n <= horizon; ++n)
    if (std::uniform_real_distribution<>(0, 1)(rng) < density) elems.push_back(n);
  if (elems.empty()) elems.push_back(0);
  return Sequence(std::move(elems), horizon);
}
}  // namespace

TEST_CASE("rep_table basics") {
  auto nat = generate(parse_generator("naturals", 100));
  auto t = rep_table(nat, 2, 100);
  REQUIRE(t.r[7] == 8);  // n+1 ordered pairs

  Sequence ab({0, 1}, 2);
  auto t01 = rep_table(ab, 2, 2);
  REQUIRE(t01.r == std::vector<u64>{1, 2, 1});  // (1+z)²

  auto sq = generate(parse_generator("squares", 100));
  REQUIRE(rep_table(sq, 2, 25).r[25] == 4);  // 0+25, 25+0, 9+16, 16+9
}

TEST_CASE("prefix-sum identity and sandwich") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 3; ++trial) {
    auto A = random_sparse(rng, 600, 0.15);
    for (unsigned h : {1u, 2u, 3u, 4u}) {
      auto t = rep_table(A, h, 600);
      u64 acc = 0;
      for (std::size_t n = 0; n < t.r.size(); ++n) {
        acc += t.r[n];
        REQUIRE(t.s[n] == acc);
      }
      for (u64 x = 1; x <= 600; x += 37) {
        // provable sandwich: A(⌊x/2^{h−1}⌋)^h ≤ s(x) ≤ A(x)^h. For h ≤ 2 the
        // halving forms coincide; a single halving is not a valid lower bound
        // once h ≥ 3 (e.g. primes at h=3, x=6: A(3)³ = 8 > s(6) = 1).
        u64 shifted = x >> (h - 1);
        u128 lo = 1, hi = 1;
        for (unsigned i = 0; i < h; ++i) {
          lo *= A.count(shifted);
          hi *= A.count(x);
        }
        REQUIRE(u128(t.s[static_cast<std::size_t>(x)]) >= lo);
        REQUIRE(u128(t.s[static_cast<std::size_t>(x)]) <= hi);
        if (h <= 2) {
          u128 lo2 = 1;
          for (unsigned i = 0; i < h; ++i) lo2 *= A.count(x / 2);
          REQUIRE(u128(t.s[static_cast<std::size_t>(x)]) >= lo2);
        }
      }
    }
  }
}

TEST_CASE("recursion r_h = r_{h-l} * r_l at random points") {
  std::mt19937_64 rng(5);
  auto A = random_sparse(rng, 400, 0.2);
  std::vector<RepTable> tables;
  for (unsigned h = 1; h <= 4; ++h) tables.push_back(rep_table(A, h, 400));
  for (int i = 0; i < 50; ++i) {
    u64 n = rng() % 401;
    unsigned h = 2 + rng() % 3;
    unsigned l = 1 + rng() % (h - 1);
    u64 sum = 0;
    for (u64 k = 0; k <= n; ++k)
      sum += tables[h - l - 1].r[static_cast<std::size_t>(k)] *
             tables[l - 1].r[static_cast<std::size_t>(n - k)];
    REQUIRE(tables[h - 1].r[static_cast<std::size_t>(n)] == sum);
  }
}

TEST_CASE("rho_exact frozen values and oracle equivalence") {
  auto nat = generate(parse_generator("naturals", 100));
  REQUIRE(rho_exact(nat, 2, 4, 0) == 2);  // {0,4},{1,3}
  REQUIRE(rho_exact(nat, 2, 4, 1) == 1);  // drops k1=0
  auto sq = generate(parse_generator("squares", 100));
  REQUIRE(rho_exact(sq, 3, 14) == 1);  // {1,4,9}

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 4; ++trial) {
    auto A = random_sparse(rng, 120, 0.3);
    for (unsigned h : {2u, 3u, 4u}) {
      for (u64 n : {u64{30}, u64{77}, u64{120}}) {
        u64 lb = rng() % 20;
        REQUIRE(rho_exact(A, h, n, lb) == oracles::brute_rho(A.elements(), h, n, lb));
      }
    }
  }

  SECTION("naturals closed form") {
    for (u64 n = 0; n <= 60; ++n) REQUIRE(rho_exact(nat, 2, n) == (n + 1) / 2);
  }
}

TEST_CASE("exact_reps is lexicographic and sized by rho") {
  auto sq = generate(parse_generator("squares", 100));
  auto er = exact_reps(sq, 2, 25);
  REQUIRE(er.reps == std::vector<std::vector<u64>>{{0, 25}, {9, 16}});
  REQUIRE(er.reps.size() == rho_exact(sq, 2, 25));
}

TEST_CASE("rho_hat frozen values") {
  auto nat = generate(parse_generator("naturals", 100));
  REQUIRE(rho_hat(nat, 2, 10, RhoHatMode::greedy) == 5);
  REQUIRE(rho_hat(nat, 2, 10, RhoHatMode::exact_max) == 5);
  auto sq = generate(parse_generator("squares", 100));
  REQUIRE(rho_hat(sq, 2, 25, RhoHatMode::greedy) == 2);
  REQUIRE(rho_hat(sq, 2, 25, RhoHatMode::exact_max) == 2);
  REQUIRE(rho_hat(sq, 2, 3, RhoHatMode::greedy) == 0);  // rho = 0
}

TEST_CASE("rho_hat ordering against exhaustive maximum") {
  std::mt19937_64 rng(23);
  int nontrivial = 0;
  for (int trial = 0; trial < 30; ++trial) {
    auto A = random_sparse(rng, 60, 0.35);
    u64 n = 20 + rng() % 41;
    auto reps = oracles::brute_exact_reps(A.elements(), 3, n);
    if (reps.size() > 20) continue;
    u64 greedy = rho_hat(A, 3, n, RhoHatMode::greedy);
    u64 exact = rho_hat(A, 3, n, RhoHatMode::exact_max);
    REQUIRE(exact == oracles::brute_max_disjoint(reps));
    REQUIRE(greedy <= exact);
    REQUIRE(exact <= std::min<u64>(reps.size(), n / 3));
    if (!reps.empty()) ++nontrivial;

    // maximality: every exact rep meets the union of the greedy family
    std::vector<u64> taken;
    u64 cnt = 0;
    for_each_exact_rep(A, 3, n, 0, [&](const std::vector<u64>& rep) {
      bool disjoint = true;
      for (u64 v : rep)
        if (std::find(taken.begin(), taken.end(), v) != taken.end()) disjoint = false;
      if (disjoint) {
        for (u64 v : rep) taken.push_back(v);
        ++cnt;
      }
      return true;
    });
    REQUIRE(cnt == greedy);
    for (const auto& rep : reps) {
      bool meets = false;
      for (u64 v : rep)
        if (std::find(taken.begin(), taken.end(), v) != taken.end()) meets = true;
      REQUIRE(meets);
    }
  }
  REQUIRE(nontrivial > 5);
}

TEST_CASE("rho_hat exact-max cap throws") {
  auto nat = generate(parse_generator("naturals", 400));
  REQUIRE_THROWS_AS(rho_hat(nat, 3, 300, RhoHatMode::exact_max, 50), std::invalid_argument);
}

TEST_CASE("nonexact counts") {
  auto nat = generate(parse_generator("naturals", 50));
  REQUIRE(nonexact_count(nat, 2, 4) == 1);  // the tuple (2,2)
  REQUIRE(nonexact_count(nat, 2, 5) == 0);  // odd n, no doubling
  Sequence A({0, 1, 2}, 3);
  REQUIRE(rep_table(A, 3, 3).r[3] == 7);
  REQUIRE(rho_exact(A, 3, 3) == 1);
  REQUIRE(nonexact_count(A, 3, 3) == 1);

  std::mt19937_64 rng(29);
  for (int t = 0; t < 3; ++t) {
    auto B = random_sparse(rng, 90, 0.3);
    for (unsigned h : {2u, 3u}) {
      auto tab = rep_table(B, h, 90);
      for (u64 n = 0; n <= 90; n += 9) {
        u64 ne = nonexact_count(B, h, n);
        REQUIRE(tab.r[static_cast<std::size_t>(n)] ==
                factorial_u64(h) * rho_exact(B, h, n) + ne);
      }
    }
  }
}

TEST_CASE("n_aux direct sums") {
  auto nat = generate(parse_generator("naturals", 50));
  REQUIRE(n_aux(nat, 2, 6) == 4);
  Sequence zero({0}, 0);
  REQUIRE(n_aux(zero, 2, 0) == 1);
  REQUIRE(n_aux(zero, 4, 0) == 1);
  auto sq = generate(parse_generator("squares", 50));
  // k ranges over squares ≤ 4; only k=4 gives a square 8−2k=0
  REQUIRE(n_aux(sq, 2, 8) == 1);

  // bound from the identity suite: nonexact(h) ≤ C(h,2)·n_aux at h−1
  std::mt19937_64 rng(31);
  auto B = random_sparse(rng, 80, 0.35);
  for (u64 n = 10; n <= 80; n += 10) {
    REQUIRE(nonexact_count(B, 3, n) <= binomial_u64(3, 2) * n_aux(B, 2, n));
    REQUIRE(nonexact_count(B, 4, n) <= binomial_u64(4, 2) * n_aux(B, 3, n));
  }
}

TEST_CASE("extension identity") {
  Sequence A({1, 2}, 10);
  auto r1 = extension_identity_check(A, 3, 2, 4);
  REQUIRE(r1.lhs == 3);
  REQUIRE(r1.rhs == 3);
  REQUIRE(r1.ok);

  Sequence B({0}, 10);
  auto r2 = extension_identity_check(B, 1, 2, 2);
  REQUIRE(r2.lhs == 1);  // (1,1)
  REQUIRE(r2.ok);

  // k > n leaves both sides at r_{A,h}(n)
  auto r3 = extension_identity_check(A, 9, 2, 4);
  REQUIRE(r3.lhs == rep_table(A, 2, 4).r[4]);
  REQUIRE(r3.ok);

  REQUIRE_THROWS_AS(extension_identity_check(A, 2, 2, 4), std::invalid_argument);

  std::mt19937_64 rng(37);
  for (int t = 0; t < 50; ++t) {
    auto S = random_sparse(rng, 100, 0.25);
    u64 k = rng() % 120;
    while (k <= S.horizon() && S.contains(k)) ++k;
    unsigned h = 2 + rng() % 3;
    u64 n = rng() % 101;
    REQUIRE(extension_identity_check(S, k, h, n).ok);
  }
}

TEST_CASE("rho_table equals per-n DP") {
  std::mt19937_64 rng(41);
  auto A = random_sparse(rng, 300, 0.2);
  for (unsigned h : {2u, 3u, 4u}) {
    auto table = rho_table(A, h, 300);
    for (u64 n = 0; n <= 300; n += 23)
      REQUIRE(table[static_cast<std::size_t>(n)] == rho_exact(A, h, n));
  }
  auto primes = generate(parse_generator("primes", 2000));
  auto t2 = rho_table(primes, 2, 2000);
  REQUIRE(t2[100] == rho_exact(primes, 2, 100));
}
