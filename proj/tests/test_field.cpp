#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "rankforge/field.hpp"

using namespace rankforge;

namespace {

std::vector<FEl> all_elements(const Field& f) {
  std::vector<FEl> out;
  out.push_back(f.zero());
  for (uint64_t i = 0; i + 1 < f.order(); ++i) out.push_back(FEl{uint32_t(i)});
  return out;
}

FEl random_nonzero(const Field& f, std::mt19937_64& rng) {
  return FEl{uint32_t(rng() % f.group_order())};
}

}  // namespace

TEST_CASE("prime field F_2") {
  Field f = Field::make(2, 1);
  CHECK(f.order() == 2);
  CHECK(f.to_int(f.zero()) == 0);
  CHECK(f.to_int(f.one()) == 1);
  CHECK(f.add(f.one(), f.one()) == f.zero());
  CHECK(f.mul(f.one(), f.one()) == f.one());
}

TEST_CASE("F_4 with explicit modulus") {
  Field f = Field::make(2, 2, {1, 1, 1});
  FEl w = f.gen();
  // w^2 = w + 1
  CHECK(f.mul(w, w) == f.add(w, f.one()));
  // w + w^2 = 1
  CHECK(f.add(w, f.mul(w, w)) == f.one());
  // frobenius squares
  CHECK(f.frob(w, 2, 1) == f.mul(w, w));
}

TEST_CASE("default modulus of F_4 is the lex-smallest primitive") {
  Field f = Field::make(2, 2);
  CHECK(f.spec().modulus == std::vector<uint32_t>{1, 1, 1});
}

TEST_CASE("generator order in F_729 via exhaustive divisor check") {
  Field f = Field::make(3, 6);
  FEl g = f.gen();
  CHECK(f.pow(g, 728) == f.one());
  for (uint64_t j = 1; j < 728; ++j) {
    if (728 % j == 0) CHECK(f.pow(g, int64_t(j)) != f.one());
  }
  CHECK(f.element_order(g) == 728);
}

TEST_CASE("arithmetic laws") {
  Field f = Field::make(3, 4);
  std::mt19937_64 rng(12345);
  for (int i = 0; i < 200; ++i) {
    FEl x = random_nonzero(f, rng);
    CHECK(f.add(x, f.zero()) == x);
    CHECK(f.mul(x, f.inv(x)) == f.one());
    CHECK(f.add(x, f.neg(x)) == f.zero());
    FEl y = random_nonzero(f, rng);
    CHECK(f.add(x, y) == f.add(y, x));
    CHECK(f.mul(x, y) == f.mul(y, x));
    FEl z = random_nonzero(f, rng);
    CHECK(f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z)));
  }
  // pow with negative exponents
  FEl x = random_nonzero(f, rng);
  CHECK(f.mul(f.pow(x, -3), f.pow(x, 3)) == f.one());
}

TEST_CASE("frobenius powers") {
  Field f = Field::make(2, 4);
  std::mt19937_64 rng(99);
  for (int i = 0; i < 50; ++i) {
    FEl x = random_nonzero(f, rng);
    CHECK(f.frob(x, 2, 0) == x);
    CHECK(f.frob(x, 2, 4) == x);                       // q^D = p^E fixes everything
    CHECK(f.frob(f.frob(x, 2, -1), 2, 1) == x);        // negative j inverts
    CHECK(f.frob(x, 4, 1) == f.frob(x, 2, 2));         // q = p^2
    CHECK(f.frob(x, 2, 1) == f.mul(x, x));
  }
}

TEST_CASE("relative trace: identities and exhaustive surjectivity") {
  SUBCASE("F_4 over F_2") {
    Field f = Field::make(2, 2);
    CHECK(f.trace(f.zero(), 2, 2) == f.zero());
    CHECK(f.trace(f.gen(), 2, 2) == f.one());
  }
  SUBCASE("exhaustive over F_9 and F_729") {
    for (uint32_t E : {2u, 6u}) {
      Field f = Field::make(3, E);
      std::set<uint64_t> image;
      for (FEl x : all_elements(f)) {
        FEl t = f.trace(x, 3, E);
        CHECK(f.in_subfield(t, 3, 1));
        image.insert(f.to_int(t));
      }
      CHECK(image.size() == 3);  // surjective onto F_3
      // F_q-linearity on a sample
      std::mt19937_64 rng(7);
      for (int i = 0; i < 100; ++i) {
        FEl x = random_nonzero(f, rng), y = random_nonzero(f, rng);
        CHECK(f.trace(f.add(x, y), 3, E) == f.add(f.trace(x, 3, E), f.trace(y, 3, E)));
      }
    }
  }
}

TEST_CASE("relative norm: product form equals power form") {
  Field f = Field::make(3, 2);
  CHECK(f.norm(f.one(), 3, 2) == f.one());
  std::set<uint64_t> image;
  for (FEl x : all_elements(f)) {
    FEl byPower = f.norm(x, 3, 2);
    FEl byProduct = f.one();
    FEl y = x;
    bool zero = x.is_zero();
    for (uint32_t j = 0; j < 2 && !zero; ++j) {
      byProduct = f.mul(byProduct, y);
      y = f.frob(y, 3, 1);
    }
    if (zero) byProduct = f.zero();
    CHECK(byPower == byProduct);
    if (!x.is_zero()) image.insert(f.to_int(byPower));
    // multiplicativity spot
  }
  CHECK(image.size() == 2);  // surjective onto F_3^x
}

TEST_CASE("norm over F_2 is constantly one on nonzero elements") {
  Field f = Field::make(2, 4);
  for (FEl x : all_elements(f)) {
    if (x.is_zero()) continue;
    CHECK(f.norm(x, 2, 4) == f.one());
  }
}

TEST_CASE("subfield primitive and membership") {
  SUBCASE("top field returns the generator") {
    Field f = Field::make(3, 4);
    CHECK(f.subfield_primitive(3, 4) == f.gen());
  }
  SUBCASE("F_4 inside F_16") {
    Field f = Field::make(2, 4);
    FEl w = f.subfield_primitive(2, 2);
    CHECK(w.v == 5);  // g^((16-1)/(4-1)) = g^5
    CHECK(f.add(f.add(f.mul(w, w), w), f.one()) == f.zero());  // w^2 + w + 1 = 0
    CHECK(f.element_order(w) == 3);
  }
  SUBCASE("fixed-point count in F_81") {
    Field f = Field::make(3, 4);
    for (uint32_t M : {1u, 2u}) {
      size_t count = 0;
      for (FEl x : all_elements(f))
        if (f.in_subfield(x, 3, M)) ++count;
      CHECK(count == pow_u64(3, M));
    }
  }
  SUBCASE("no such subfield") {
    Field f = Field::make(2, 4);
    CHECK_THROWS_AS((void)f.subfield_primitive(2, 3), error);
  }
}

TEST_CASE("subfield element enumeration is canonical") {
  Field f = Field::make(3, 2);
  auto e3 = f.subfield_elements(3, 1);
  REQUIRE(e3.size() == 3);
  CHECK(f.to_int(e3[0]) == 0);
  CHECK(f.to_int(e3[1]) == 1);
  CHECK(f.to_int(e3[2]) == 2);
  auto e9 = f.subfield_elements(3, 2);
  std::set<uint64_t> distinct;
  for (FEl x : e9) distinct.insert(f.to_int(x));
  CHECK(distinct.size() == 9);
}

TEST_CASE("solve_power_equation") {
  SUBCASE("N = 1 returns exactly the right-hand side") {
    Field f = Field::make(3, 6);
    std::mt19937_64 rng(5);
    FEl c = random_nonzero(f, rng);
    auto sol = f.solve_power_equation(3, 6, 1, c);
    REQUIRE(sol.size() == 1);
    CHECK(sol[0] == c);
  }
  SUBCASE("q=2, n=4, N=3, c=1 has exactly 3 solutions") {
    Field f = Field::make(2, 4);
    auto sol = f.solve_power_equation(2, 4, 3, f.one());
    CHECK(sol.size() == 3);  // 2^gcd(4,2) - 1
    for (FEl x : sol) CHECK(f.pow(x, 3) == f.one());
    // brute-force scan agrees
    size_t scan = 0;
    for (FEl x : all_elements(f))
      if (!x.is_zero() && f.pow(x, 3) == f.one()) ++scan;
    CHECK(scan == sol.size());
  }
  SUBCASE("random (N, c) against full field scan in F_729") {
    Field f = Field::make(3, 6);
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
      int64_t N = int64_t(rng() % 2000) - 1000;
      if (N == 0) N = 7;
      FEl c = random_nonzero(f, rng);
      auto sol = f.solve_power_equation(3, 6, N, c);
      std::set<uint32_t> sset;
      for (FEl x : sol) sset.insert(x.v);
      size_t scan = 0;
      for (FEl x : all_elements(f)) {
        if (x.is_zero()) continue;
        if (f.pow(x, N) == c) {
          ++scan;
          CHECK(sset.count(x.v) == 1);
        }
      }
      CHECK(scan == sol.size());
      uint64_t Q = 728;
      uint64_t Nr = uint64_t(((N % int64_t(Q)) + int64_t(Q)) % int64_t(Q));
      uint64_t expect = Nr == 0 ? Q : gcd_u64(Nr, Q);
      CHECK((sol.empty() || sol.size() == expect));
    }
  }
  SUBCASE("zero right-hand side rejected") {
    Field f = Field::make(3, 6);
    CHECK_THROWS_AS((void)f.solve_power_equation(3, 6, 2, f.zero()), error);
  }
}

TEST_CASE("coords and uncoords") {
  Field f = Field::make(2, 4);
  FEl w = f.subfield_primitive(2, 4);
  std::vector<FEl> basis{f.one(), w, f.mul(w, w), f.pow(w, 3)};
  SUBCASE("first basis vector") {
    auto c = f.coords(basis[0], basis, 2);
    CHECK(c[0] == f.one());
    CHECK(c[1] == f.zero());
    CHECK(c[2] == f.zero());
    CHECK(c[3] == f.zero());
  }
  SUBCASE("round trip on random elements") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
      FEl x = random_nonzero(f, rng);
      auto c = f.coords(x, basis, 2);
      CHECK(f.uncoords(c, basis) == x);
    }
  }
  SUBCASE("agreement with brute-force solve over F_4") {
    Field g = Field::make(2, 4);
    FEl w2 = g.subfield_primitive(2, 2);
    std::vector<FEl> b{g.one(), w2};
    auto e2 = g.subfield_elements(2, 1);
    for (FEl x : g.subfield_elements(2, 2)) {
      auto c = g.coords(x, b, 2);
      // oracle: enumerate all 4 combinations
      int hits = 0;
      for (FEl c0 : e2)
        for (FEl c1 : e2) {
          if (g.add(g.mul(c0, b[0]), g.mul(c1, b[1])) == x) {
            ++hits;
            CHECK(c[0] == c0);
            CHECK(c[1] == c1);
          }
        }
      CHECK(hits == 1);
    }
  }
  SUBCASE("dependent basis rejected") {
    std::vector<FEl> bad{f.one(), w, f.add(f.one(), w)};
    CHECK_THROWS_AS((void)f.coords(w, bad, 2), error);
  }
  SUBCASE("element outside span rejected") {
    FEl w2 = f.subfield_primitive(2, 2);
    std::vector<FEl> b{f.one(), w2};  // spans F_4 only
    CHECK_THROWS_AS((void)f.coords(w, b, 2), error);
  }
}

TEST_CASE("canonical serialization round trip") {
  Field f = Field::make(3, 3);
  for (FEl x : all_elements(f)) {
    CHECK(f.from_int(f.to_int(x)) == x);
  }
  // distinct elements, distinct integers
  std::set<uint64_t> ints;
  for (FEl x : all_elements(f)) ints.insert(f.to_int(x));
  CHECK(ints.size() == f.order());
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS((void)Field::make(4, 2), error);               // NonPrime
  CHECK_THROWS_AS((void)Field::make(2, 23), error);              // TableBudgetExceeded
  CHECK_THROWS_AS((void)Field::make(2, 2, {1, 0, 1}), error);    // x^2+1 reducible
  CHECK_THROWS_AS((void)Field::make(2, 4, {1, 1, 1, 1, 1}), error);  // irreducible, order-5 root
  Field f = Field::make(2, 2);
  CHECK_THROWS_AS((void)f.inv(f.zero()), error);
  CHECK_THROWS_AS((void)f.pow(f.zero(), -1), error);
}

TEST_CASE("small tables agree with field arithmetic") {
  Field f = Field::make(2, 4);
  auto t = f.small_tables(4);
  REQUIRE(t.elems.size() == 4);
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) {
      CHECK(t.elems[t.at_add(uint8_t(i), uint8_t(j))] == f.add(t.elems[i], t.elems[j]));
      CHECK(t.elems[t.at_mul(uint8_t(i), uint8_t(j))] == f.mul(t.elems[i], t.elems[j]));
    }
  for (size_t i = 0; i < 4; ++i) CHECK(f.small_index(t.elems[i], 4) == i);
}
