#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "basisforge/sequence.hpp"
#include "support/oracles.hpp"

using namespace basisforge;

TEST_CASE("built-in generators match definitions") {
  auto sq = generate(parse_generator("squares", 10));
  REQUIRE(sq.elements() == std::vector<u64>{0, 1, 4, 9});

  auto nat = generate(parse_generator("naturals", 3));
  REQUIRE(nat.elements() == std::vector<u64>{0, 1, 2, 3});

  auto comp = generate(parse_generator("composition(squares;naturals)", 10));
  REQUIRE(comp.elements() == std::vector<u64>{0, 1, 4, 9});

  auto cubes = generate(parse_generator("cubes", 100));
  REQUIRE(cubes.elements() == std::vector<u64>{0, 1, 8, 27, 64});

  auto k4 = generate(parse_generator("kth-powers:4", 100));
  REQUIRE(k4.elements() == std::vector<u64>{0, 1, 16, 81});
}

TEST_CASE("counting and element access") {
  auto sq = generate(parse_generator("squares", 100));
  REQUIRE(sq.count(10) == 4);
  REQUIRE(sq.count(0) == 1);  // 0 is a square
  REQUIRE(sq.element(2) == 4);

  auto primes = generate(parse_generator("primes", 100));
  REQUIRE(primes.element(0) == 2);
  REQUIRE(primes.count(100) == oracles::sieve(100).size());

  SECTION("queries beyond the horizon are rejected") {
    REQUIRE_THROWS_AS(sq.count(101), std::out_of_range);
    REQUIRE_THROWS_AS(sq.contains(101), std::out_of_range);
    REQUIRE_THROWS_AS(sq.element(99), std::out_of_range);
  }
}

TEST_CASE("count(element(n)) == n+1 and unit steps") {
  for (const char* g : {"naturals", "squares", "primes", "counterexample-c:16,4"}) {
    auto A = generate(parse_generator(g, 5000));
    for (std::size_t n = 0; n < A.size(); n += 7) REQUIRE(A.count(A.element(n)) == n + 1);
    u64 prev = A.count(0);
    for (u64 x = 1; x <= 200; ++x) {
      u64 c = A.count(x);
      REQUIRE(c - prev == (A.contains(x) ? 1 : 0));
      prev = c;
    }
  }
}

TEST_CASE("explicit file parsing") {
  auto write = [](const char* path, const char* body) {
    std::ofstream f(path);
    f << body;
  };
  write("/tmp/bf_seq_ok.txt", "# horizon=20\n1\n5\n11\n");
  auto A = generate(parse_generator("file:/tmp/bf_seq_ok.txt", 0));
  REQUIRE(A.horizon() == 20);
  REQUIRE(A.elements() == std::vector<u64>{1, 5, 11});

  write("/tmp/bf_seq_nohdr.txt", "2\n3\n9\n");
  auto B = generate(parse_generator("file:/tmp/bf_seq_nohdr.txt", 0));
  REQUIRE(B.horizon() == 9);  // defaults to last element

  write("/tmp/bf_seq_bad1.txt", "5\n4\n");
  REQUIRE_THROWS_AS(generate(parse_generator("file:/tmp/bf_seq_bad1.txt", 0)),
                    std::invalid_argument);
  write("/tmp/bf_seq_bad2.txt", "1\ntwo\n");
  REQUIRE_THROWS_AS(generate(parse_generator("file:/tmp/bf_seq_bad2.txt", 0)),
                    std::invalid_argument);
  write("/tmp/bf_seq_bad3.txt", "# horizon=3\n1\n7\n");
  REQUIRE_THROWS_AS(generate(parse_generator("file:/tmp/bf_seq_bad3.txt", 0)),
                    std::invalid_argument);
}

TEST_CASE("integer-valued polynomials") {
  // triangular numbers x(x+1)/2
  auto tri = generate(parse_generator("poly:0,1,1/2", 100));
  REQUIRE(tri.elements() == std::vector<u64>{0, 1, 3, 6, 10, 15, 21, 28, 36, 45, 55, 66, 78, 91});

  // (x² + 1)/2 is not integer-valued
  REQUIRE_THROWS_AS(generate(parse_generator("poly:1,0,1/2", 100)), std::invalid_argument);
  // negative leading coefficient
  REQUIRE_THROWS_AS(generate(parse_generator("poly:0,-1", 100)), std::invalid_argument);
  // values dipping negative are clipped, not errors
  auto shifted = generate(parse_generator("poly:-4,0,1", 100));  // x² − 4
  REQUIRE(shifted.elements().front() == 0);                      // from x = 2
  REQUIRE(shifted.count(5) == 2);                                // {0, 5}
}

TEST_CASE("counterexample C: {0,1} present, checkpoint stretch grows") {
  GeneratorSpec spec = parse_generator("counterexample-c:16,4", 1200000);
  auto C = generate(spec);
  REQUIRE(C.contains(0));
  REQUIRE(C.contains(1));

  // checkpoints n_j with c_{n_j} = g_j = 16^(2^j)
  std::vector<double> stretch;
  for (u64 g = 16; g <= C.horizon(); g = g * g) {
    u64 nj = C.count(g) - 1;
    REQUIRE(C.element(nj) == g);
    if (2 * nj >= C.size()) break;
    stretch.push_back(static_cast<double>(C.element(2 * nj)) / static_cast<double>(g));
  }
  REQUIRE(stretch.size() >= 3);
  for (std::size_t i = 1; i < stretch.size(); ++i) REQUIRE(stretch[i] > stretch[i - 1] * 1.5);
}

TEST_CASE("counterexample D: cubes plus blocks, boundary jump grows") {
  auto D = generate(parse_generator("counterexample-d:3", 600000));
  REQUIRE(D.contains(8));
  REQUIRE(D.contains(27));
  REQUIRE(D.contains(531441));       // 81³ block start
  REQUIRE(D.contains(531442));       // inside the dense block
  REQUIRE(!D.contains(531440 - 2));  // just below: not a cube, no block

  // D(n_k + n_k^{2/3})/D(n_k) at consecutive block starts
  double r1 = static_cast<double>(D.count(729 + 81)) / static_cast<double>(D.count(729));
  double r2 =
      static_cast<double>(D.count(531441 + 6561)) / static_cast<double>(D.count(531441));
  REQUIRE(r1 > 3.0);
  REQUIRE(r2 > 10.0);
  REQUIRE(r2 > 2.0 * r1);
}

TEST_CASE("sequence invariants are validated") {
  REQUIRE_THROWS_AS(Sequence({3, 3}, 10), std::invalid_argument);
  REQUIRE_THROWS_AS(Sequence({3, 11}, 10), std::invalid_argument);
  REQUIRE_THROWS_AS(generate(parse_generator("naturals", 0)), std::invalid_argument);
}
