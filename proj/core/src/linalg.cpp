#include "rankforge/linalg.hpp"

#include <algorithm>

namespace rankforge {

namespace {

void check_same_field(const Mat& A, const Mat& B) {
  require(A.f == B.f, errc::dimension_mismatch, "matrices over different fields");
}

}  // namespace

Mat Mat::identity(const Field& f, uint32_t n) {
  Mat I(f, n, n);
  for (uint32_t i = 0; i < n; ++i) I.at(i, i) = f.one();
  return I;
}

Mat mat_add(const Mat& A, const Mat& B) {
  check_same_field(A, B);
  require(A.rows == B.rows && A.cols == B.cols, errc::dimension_mismatch, "add shapes");
  Mat C(*A.f, A.rows, A.cols);
  for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = A.f->add(A.a[i], B.a[i]);
  return C;
}

Mat mat_sub(const Mat& A, const Mat& B) {
  check_same_field(A, B);
  require(A.rows == B.rows && A.cols == B.cols, errc::dimension_mismatch, "sub shapes");
  Mat C(*A.f, A.rows, A.cols);
  for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = A.f->sub(A.a[i], B.a[i]);
  return C;
}

Mat mat_mul(const Mat& A, const Mat& B) {
  check_same_field(A, B);
  require(A.cols == B.rows, errc::dimension_mismatch, "mul shapes");
  const Field& f = *A.f;
  Mat C(f, A.rows, B.cols);
  for (uint32_t i = 0; i < A.rows; ++i) {
    for (uint32_t k = 0; k < A.cols; ++k) {
      FEl aik = A.at(i, k);
      if (aik.is_zero()) continue;
      for (uint32_t j = 0; j < B.cols; ++j) {
        FEl b = B.at(k, j);
        if (b.is_zero()) continue;
        C.at(i, j) = f.add(C.at(i, j), f.mul(aik, b));
      }
    }
  }
  return C;
}

Mat mat_scale(const Mat& A, FEl c) {
  Mat C(*A.f, A.rows, A.cols);
  for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = A.f->mul(A.a[i], c);
  return C;
}

Mat mat_transpose(const Mat& A) {
  Mat C(*A.f, A.cols, A.rows);
  for (uint32_t i = 0; i < A.rows; ++i)
    for (uint32_t j = 0; j < A.cols; ++j) C.at(j, i) = A.at(i, j);
  return C;
}

Mat mat_frob_p(const Mat& A, int64_t e) {
  Mat C(*A.f, A.rows, A.cols);
  for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = A.f->frob_p(A.a[i], e);
  return C;
}

bool mat_is_zero(const Mat& A) {
  return std::all_of(A.a.begin(), A.a.end(), [](FEl x) { return x.is_zero(); });
}

bool mat_in_subfield(const Mat& A, uint64_t q) {
  return std::all_of(A.a.begin(), A.a.end(),
                     [&](FEl x) { return A.f->in_subfield(x, q, 1); });
}

uint32_t mat_rank(const Mat& A) {
  const Field& f = *A.f;
  Mat M = A;
  uint32_t rank = 0;
  for (uint32_t col = 0; col < M.cols && rank < M.rows; ++col) {
    uint32_t pivot = rank;
    while (pivot < M.rows && M.at(pivot, col).is_zero()) ++pivot;
    if (pivot == M.rows) continue;
    for (uint32_t j = 0; j < M.cols; ++j) std::swap(M.at(pivot, j), M.at(rank, j));
    FEl pinv = f.inv(M.at(rank, col));
    for (uint32_t r = rank + 1; r < M.rows; ++r) {
      FEl x = M.at(r, col);
      if (x.is_zero()) continue;
      FEl factor = f.mul(x, pinv);
      for (uint32_t j = col; j < M.cols; ++j)
        M.at(r, j) = f.sub(M.at(r, j), f.mul(factor, M.at(rank, j)));
    }
    ++rank;
  }
  return rank;
}

Mat mat_inverse(const Mat& A) {
  require(A.rows == A.cols, errc::dimension_mismatch, "inverse of non-square matrix");
  const Field& f = *A.f;
  const uint32_t n = A.rows;
  Mat M = A;
  Mat I = Mat::identity(f, n);
  for (uint32_t col = 0; col < n; ++col) {
    uint32_t pivot = col;
    while (pivot < n && M.at(pivot, col).is_zero()) ++pivot;
    require(pivot < n, errc::singular, "matrix is singular");
    for (uint32_t j = 0; j < n; ++j) {
      std::swap(M.at(pivot, j), M.at(col, j));
      std::swap(I.at(pivot, j), I.at(col, j));
    }
    FEl pinv = f.inv(M.at(col, col));
    for (uint32_t j = 0; j < n; ++j) {
      M.at(col, j) = f.mul(M.at(col, j), pinv);
      I.at(col, j) = f.mul(I.at(col, j), pinv);
    }
    for (uint32_t r = 0; r < n; ++r) {
      if (r == col) continue;
      FEl x = M.at(r, col);
      if (x.is_zero()) continue;
      for (uint32_t j = 0; j < n; ++j) {
        M.at(r, j) = f.sub(M.at(r, j), f.mul(x, M.at(col, j)));
        I.at(r, j) = f.sub(I.at(r, j), f.mul(x, I.at(col, j)));
      }
    }
  }
  return I;
}

Mat left_null_space(const Mat& A) {
  // Row-reduce A^t; null vectors read off from the free columns.
  const Field& f = *A.f;
  Mat M = mat_transpose(A);  // columns index the original rows of A
  const uint32_t n = M.cols;
  std::vector<int64_t> pivot_of_col(n, -1);
  uint32_t rank = 0;
  for (uint32_t col = 0; col < n && rank < M.rows; ++col) {
    uint32_t pivot = rank;
    while (pivot < M.rows && M.at(pivot, col).is_zero()) ++pivot;
    if (pivot == M.rows) continue;
    for (uint32_t j = 0; j < n; ++j) std::swap(M.at(pivot, j), M.at(rank, j));
    FEl pinv = f.inv(M.at(rank, col));
    for (uint32_t j = 0; j < n; ++j) M.at(rank, j) = f.mul(M.at(rank, j), pinv);
    for (uint32_t r = 0; r < M.rows; ++r) {
      if (r == rank) continue;
      FEl x = M.at(r, col);
      if (x.is_zero()) continue;
      for (uint32_t j = 0; j < n; ++j)
        M.at(r, j) = f.sub(M.at(r, j), f.mul(x, M.at(rank, j)));
    }
    pivot_of_col[col] = rank;
    ++rank;
  }
  Mat basis(f, n - rank, n);
  uint32_t out = 0;
  for (uint32_t free = 0; free < n; ++free) {
    if (pivot_of_col[free] >= 0) continue;
    basis.at(out, free) = f.one();
    for (uint32_t col = 0; col < n; ++col) {
      int64_t pr = pivot_of_col[col];
      if (pr >= 0) basis.at(out, col) = f.neg(M.at(uint32_t(pr), free));
    }
    ++out;
  }
  return basis;
}

Mat moore_matrix(const Field& f, FEl w, uint32_t r, uint64_t q) {
  require(f.element_order(w) == pow_u64(q, r) - 1, errc::not_primitive,
          "w is not primitive in F_{q^r}");
  Mat E(f, r, r);
  for (uint32_t i = 0; i < r; ++i)
    for (uint32_t j = 0; j < r; ++j) E.at(i, j) = f.frob(f.pow(w, j), q, i);
  return E;
}

Mat k_permutation(const Field& f, uint32_t r, int64_t k) {
  int64_t km = ((k % r) + r) % r;
  require(gcd_u64(uint64_t(km), r) == 1, errc::not_coprime, "gcd(k, r) != 1");
  Mat K(f, r, r);
  for (uint32_t i = 0; i < r; ++i) K.at(uint32_t((uint64_t(i) * uint64_t(km)) % r), i) = f.one();
  return K;
}

namespace {

// Gauss-Jordan returning (R, S) with R = S * M in reduced row echelon form.
std::pair<Mat, Mat> rref_with_transform(const Mat& M0) {
  const Field& f = *M0.f;
  Mat M = M0;
  Mat S = Mat::identity(f, M.rows);
  uint32_t rank = 0;
  for (uint32_t col = 0; col < M.cols && rank < M.rows; ++col) {
    uint32_t pivot = rank;
    while (pivot < M.rows && M.at(pivot, col).is_zero()) ++pivot;
    if (pivot == M.rows) continue;
    for (uint32_t j = 0; j < M.cols; ++j) std::swap(M.at(pivot, j), M.at(rank, j));
    for (uint32_t j = 0; j < S.cols; ++j) std::swap(S.at(pivot, j), S.at(rank, j));
    FEl pinv = f.inv(M.at(rank, col));
    for (uint32_t j = 0; j < M.cols; ++j) M.at(rank, j) = f.mul(M.at(rank, j), pinv);
    for (uint32_t j = 0; j < S.cols; ++j) S.at(rank, j) = f.mul(S.at(rank, j), pinv);
    for (uint32_t r = 0; r < M.rows; ++r) {
      if (r == rank) continue;
      FEl x = M.at(r, col);
      if (x.is_zero()) continue;
      for (uint32_t j = 0; j < M.cols; ++j)
        M.at(r, j) = f.sub(M.at(r, j), f.mul(x, M.at(rank, j)));
      for (uint32_t j = 0; j < S.cols; ++j)
        S.at(r, j) = f.sub(S.at(r, j), f.mul(x, S.at(rank, j)));
    }
    ++rank;
  }
  return {M, S};
}

// Completes a full-row-rank RREF R (m x n) to an invertible n x n matrix whose
// first m rows are R.
Mat complete_to_invertible(const Mat& R) {
  const Field& f = *R.f;
  const uint32_t m = R.rows, n = R.cols;
  std::vector<bool> is_pivot(n, false);
  for (uint32_t r = 0; r < m; ++r) {
    for (uint32_t c = 0; c < n; ++c) {
      if (!R.at(r, c).is_zero()) {
        is_pivot[c] = true;
        break;
      }
    }
  }
  Mat T(f, n, n);
  for (uint32_t r = 0; r < m; ++r)
    for (uint32_t c = 0; c < n; ++c) T.at(r, c) = R.at(r, c);
  uint32_t out = m;
  for (uint32_t c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    T.at(out, c) = f.one();
    ++out;
  }
  require(out == n, errc::rank_deficient, "input not of full row rank");
  return T;
}

}  // namespace

std::pair<Mat, Mat> full_rank_factorize(const Mat& B, const Mat& A) {
  check_same_field(B, A);
  require(B.rows == A.rows && B.cols == A.cols, errc::dimension_mismatch, "factorize shapes");
  require(mat_rank(B) == B.rows, errc::rank_deficient, "B must have full row rank");
  require(mat_rank(A) == A.rows, errc::rank_deficient, "A must have full row rank");
  auto [RB, SB] = rref_with_transform(B);
  auto [RA, SA] = rref_with_transform(A);
  Mat TB = complete_to_invertible(RB);
  Mat TA = complete_to_invertible(RA);
  // B = SB^{-1} (I|0) TB and A = SA^{-1} (I|0) TA.
  Mat S = mat_mul(mat_inverse(SB), SA);
  Mat T = mat_mul(mat_inverse(TA), TB);
  return {S, T};
}

GlStream::GlStream(const Field& f, uint32_t dim, uint64_t q) : f_(&f), dim_(dim), q_(q) {
  require(group_order(q, dim) <= kGroupBudget, errc::budget_exceeded,
          "GL(" + std::to_string(dim) + ", " + std::to_string(q) + ") exceeds enumeration budget");
  space_ = pow_u64(q, dim * dim);
  elems_ = f.subfield_elements(q, 1);
}

uint64_t GlStream::group_order(uint64_t q, uint32_t dim) {
  unsigned __int128 total = 1;
  uint64_t qd = pow_u64(q, dim);
  uint64_t qi = 1;
  for (uint32_t i = 0; i < dim; ++i) {
    total *= (qd - qi);
    if (total > (unsigned __int128)UINT64_MAX) return UINT64_MAX;
    qi *= q;
  }
  return uint64_t(total);
}

Mat GlStream::decode(uint64_t encoding) const {
  Mat M(*f_, dim_, dim_);
  for (size_t i = 0; i < M.a.size(); ++i) {
    M.a[i] = elems_[encoding % q_];
    encoding /= q_;
  }
  return M;
}

std::optional<Mat> GlStream::next() {
  while (pos_ < space_) {
    Mat M = decode(pos_);
    ++pos_;
    if (mat_rank(M) == dim_) return M;
  }
  return std::nullopt;
}

std::vector<uint64_t> gl_encodings(const Field& f, uint32_t dim, uint64_t q) {
  GlStream s(f, dim, q);
  std::vector<uint64_t> out;
  while (s.next()) out.push_back(s.position() - 1);
  return out;
}

}  // namespace rankforge
