#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rankforge/linalg.hpp"

using namespace rankforge;

namespace {

Mat random_mat(const Field& f, uint32_t r, uint32_t c, uint64_t q, std::mt19937_64& rng) {
  auto elems = f.subfield_elements(q, 1);
  Mat M(f, r, c);
  for (auto& x : M.a) x = elems[rng() % elems.size()];
  return M;
}

Mat random_invertible(const Field& f, uint32_t n, uint64_t q, std::mt19937_64& rng) {
  while (true) {
    Mat M = random_mat(f, n, n, q, rng);
    if (mat_rank(M) == n) return M;
  }
}

}  // namespace

TEST_CASE("rank basics") {
  Field f = Field::make(2, 4);
  CHECK(mat_rank(Mat::zero(f, 3, 5)) == 0);
  CHECK(mat_rank(Mat::identity(f, 4)) == 4);
}

TEST_CASE("rank is invariant under field extension") {
  Field f2 = Field::make(2, 1);
  Field f16 = Field::make(2, 4);
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    Mat small = random_mat(f2, 3, 5, 2, rng);
    Mat big(f16, 3, 5);
    for (size_t i = 0; i < small.a.size(); ++i)
      big.a[i] = f16.from_int(f2.to_int(small.a[i]));
    CHECK(mat_rank(small) == mat_rank(big));
  }
}

TEST_CASE("basic ops") {
  Field f = Field::make(3, 2);
  std::mt19937_64 rng(7);
  Mat M = random_mat(f, 3, 4, 9, rng);
  CHECK(mat_mul(Mat::identity(f, 3), M) == M);
  CHECK(mat_transpose(mat_transpose(M)) == M);
  for (int trial = 0; trial < 50; ++trial) {
    Mat A = random_invertible(f, 4, 9, rng);
    CHECK(mat_mul(A, mat_inverse(A)) == Mat::identity(f, 4));
  }
  CHECK_THROWS_AS((void)mat_inverse(Mat::zero(f, 2, 2)), error);
  CHECK_THROWS_AS((void)mat_mul(Mat::zero(f, 2, 3), Mat::zero(f, 2, 3)), error);
}

TEST_CASE("entrywise frobenius") {
  Field f = Field::make(2, 4);
  std::mt19937_64 rng(9);
  Mat M = random_mat(f, 2, 2, 16, rng);
  Mat Mp = mat_frob_p(M, 1);
  for (size_t i = 0; i < M.a.size(); ++i) CHECK(Mp.a[i] == f.mul(M.a[i], M.a[i]));
  // frobenius distributes over products
  Mat N = random_mat(f, 2, 2, 16, rng);
  CHECK(mat_frob_p(mat_mul(M, N), 3) == mat_mul(mat_frob_p(M, 3), mat_frob_p(N, 3)));
}

TEST_CASE("moore matrix") {
  SUBCASE("r = 1") {
    Field f = Field::make(2, 2);
    Mat E = moore_matrix(f, f.subfield_primitive(2, 1), 1, 2);
    CHECK(E.at(0, 0) == f.one());
  }
  SUBCASE("F_4 explicit") {
    Field f = Field::make(2, 2);
    FEl w = f.gen();
    Mat E = moore_matrix(f, w, 2, 2);
    CHECK(E.at(0, 0) == f.one());
    CHECK(E.at(0, 1) == w);
    CHECK(E.at(1, 0) == f.one());
    CHECK(E.at(1, 1) == f.mul(w, w));
    // det = w^2 - w = 1 over F_4
    FEl det = f.sub(f.mul(E.at(0, 0), E.at(1, 1)), f.mul(E.at(0, 1), E.at(1, 0)));
    CHECK(det == f.one());
  }
  SUBCASE("nonsingular across shapes") {
    struct Shape { uint32_t p, E, r; uint64_t q; };
    for (Shape s : {Shape{2, 4, 4, 2}, Shape{3, 3, 3, 3}, Shape{3, 6, 6, 3}}) {
      Field f = Field::make(s.p, s.E);
      Mat E = moore_matrix(f, f.subfield_primitive(s.q, s.r), s.r, s.q);
      CHECK(mat_rank(E) == s.r);
    }
  }
  SUBCASE("non-primitive rejected") {
    Field f = Field::make(2, 4);
    CHECK_THROWS_AS((void)moore_matrix(f, f.one(), 4, 2), error);
  }
}

TEST_CASE("k permutation matrix") {
  Field f = Field::make(2, 4);
  CHECK(k_permutation(f, 4, 1) == Mat::identity(f, 4));
  Mat K = k_permutation(f, 4, 3);
  // column i has its 1 at row 3i mod 4: rows (0,3,2,1)
  uint32_t expected_row[4] = {0, 3, 2, 1};
  for (uint32_t i = 0; i < 4; ++i)
    for (uint32_t r = 0; r < 4; ++r)
      CHECK(K.at(r, i) == (r == expected_row[i] ? f.one() : f.zero()));
  CHECK(mat_mul(K, mat_inverse(K)) == Mat::identity(f, 4));
  CHECK_THROWS_AS((void)k_permutation(f, 4, 2), error);
}

TEST_CASE("gl enumeration counts") {
  SUBCASE("dim 1, q 2") {
    Field f = Field::make(2, 1);
    CHECK(gl_encodings(f, 1, 2).size() == 1);
  }
  SUBCASE("dim 2, q 2") {
    Field f = Field::make(2, 1);
    CHECK(gl_encodings(f, 2, 2).size() == 6);
  }
  SUBCASE("dim 4, q 2") {
    Field f = Field::make(2, 1);
    CHECK(gl_encodings(f, 4, 2).size() == 20160);
    CHECK(GlStream::group_order(2, 4) == 20160);
  }
  SUBCASE("budget enforced") {
    Field f = Field::make(3, 1);
    CHECK_THROWS_AS(GlStream(f, 6, 3), error);
  }
  SUBCASE("restartable from an encoding") {
    Field f = Field::make(2, 1);
    auto all = gl_encodings(f, 2, 2);
    GlStream s(f, 2, 2);
    s.seek(all[3]);
    auto M = s.next();
    REQUIRE(M.has_value());
    CHECK(s.position() - 1 == all[3]);
  }
}

TEST_CASE("full rank factorization") {
  Field f = Field::make(3, 1);
  auto canonical = [&](uint32_t m, uint32_t n) {
    Mat A(f, m, n);
    for (uint32_t i = 0; i < m; ++i) A.at(i, i) = f.one();
    return A;
  };
  SUBCASE("B equals A") {
    Mat A = canonical(2, 4);
    auto [S, T] = full_rank_factorize(A, A);
    CHECK(S == Mat::identity(f, 2));
    CHECK(T == Mat::identity(f, 4));
  }
  SUBCASE("random full-rank 3x6 over F_3") {
    std::mt19937_64 rng(77);
    Mat A = canonical(3, 6);
    int done = 0;
    while (done < 50) {
      Mat B = random_mat(f, 3, 6, 3, rng);
      if (mat_rank(B) != 3) continue;
      auto [S, T] = full_rank_factorize(B, A);
      CHECK(mat_rank(S) == 3);
      CHECK(mat_rank(T) == 6);
      CHECK(mat_mul(mat_mul(S, A), T) == B);
      ++done;
    }
  }
  SUBCASE("rank-deficient rejected") {
    Mat A = canonical(2, 4);
    CHECK_THROWS_AS((void)full_rank_factorize(Mat::zero(f, 2, 4), A), error);
  }
}

TEST_CASE("left null space gives the radical") {
  Field f = Field::make(2, 1);
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 50; ++trial) {
    Mat M = random_mat(f, 4, 6, 2, rng);
    Mat ns = left_null_space(M);
    CHECK(ns.rows == 4 - mat_rank(M));
    if (ns.rows > 0) CHECK(mat_is_zero(mat_mul(ns, M)));
    CHECK(mat_rank(ns) == ns.rows);
  }
}

TEST_CASE("sylvester rank inequality, 500 samples") {
  Field f = Field::make(3, 1);
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    uint32_t m = 1 + rng() % 4, n = 1 + rng() % 4, n2 = 1 + rng() % 4;
    Mat A = random_mat(f, m, n, 3, rng);
    Mat M = random_mat(f, n, n2, 3, rng);
    int lhs = int(mat_rank(mat_mul(A, M)));
    int rhs = int(mat_rank(A)) + int(mat_rank(M)) - int(n);
    CHECK(lhs >= rhs);
  }
}

TEST_CASE("rank unchanged by invertible sandwich") {
  Field f = Field::make(2, 2);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Mat M = random_mat(f, 3, 4, 4, rng);
    Mat A = random_invertible(f, 3, 4, rng);
    Mat B = random_invertible(f, 4, 4, rng);
    CHECK(mat_rank(mat_mul(mat_mul(mat_transpose(A), M), B)) == mat_rank(M));
  }
}
