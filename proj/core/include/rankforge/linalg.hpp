#ifndef RANKFORGE_LINALG_HPP
#define RANKFORGE_LINALG_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rankforge/field.hpp"

namespace rankforge {

// Dense matrix over a Field. Entries may lie in any subfield; rank and all
// other operations are insensitive to which subfield they are read in.
struct Mat {
  const Field* f = nullptr;
  uint32_t rows = 0, cols = 0;
  std::vector<FEl> a;

  Mat() = default;
  Mat(const Field& field, uint32_t r, uint32_t c)
      : f(&field), rows(r), cols(c), a(size_t(r) * c) {}

  FEl& at(uint32_t r, uint32_t c) { return a[size_t(r) * cols + c]; }
  const FEl& at(uint32_t r, uint32_t c) const { return a[size_t(r) * cols + c]; }

  static Mat zero(const Field& f, uint32_t r, uint32_t c) { return Mat(f, r, c); }
  static Mat identity(const Field& f, uint32_t n);

  friend bool operator==(const Mat& x, const Mat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

Mat mat_add(const Mat& A, const Mat& B);
Mat mat_sub(const Mat& A, const Mat& B);
Mat mat_mul(const Mat& A, const Mat& B);
Mat mat_scale(const Mat& A, FEl c);
Mat mat_transpose(const Mat& A);
Mat mat_inverse(const Mat& A);  // Singular on rank deficiency
// Applies x -> x^(p^e) to every entry.
Mat mat_frob_p(const Mat& A, int64_t e);
uint32_t mat_rank(const Mat& A);
bool mat_is_zero(const Mat& A);
// True when every entry lies in F_q (q a power of the characteristic).
bool mat_in_subfield(const Mat& A, uint64_t q);

// Basis of {v : v^t A = 0} as rows of the returned matrix (over the span of
// the entries' field).
Mat left_null_space(const Mat& A);

// Moore matrix: entry (i,j) = w^(j q^i). w must be primitive in F_{q^r}.
Mat moore_matrix(const Field& f, FEl w, uint32_t r, uint64_t q);

// Permutation matrix K_r: column i carries its 1 in row (i*k mod r).
Mat k_permutation(const Field& f, uint32_t r, int64_t k);

// Factors a full-row-rank B as S * A * T with S, T invertible, where A is a
// given canonical full-row-rank matrix of the same shape.
std::pair<Mat, Mat> full_rank_factorize(const Mat& B, const Mat& A);

// Streams every invertible dim x dim matrix over F_q exactly once, ordered by
// the base-q row-major encoding. Restartable from any encoding, so scans can
// be chunked deterministically.
class GlStream {
 public:
  static constexpr uint64_t kGroupBudget = uint64_t(1) << 28;

  GlStream(const Field& f, uint32_t dim, uint64_t q);

  std::optional<Mat> next();
  void seek(uint64_t encoding) { pos_ = encoding; }
  uint64_t position() const { return pos_; }
  uint64_t space_size() const { return space_; }
  Mat decode(uint64_t encoding) const;

  static uint64_t group_order(uint64_t q, uint32_t dim);

 private:
  const Field* f_;
  uint32_t dim_;
  uint64_t q_;
  uint64_t space_;
  uint64_t pos_ = 0;
  std::vector<FEl> elems_;
};

// Materializes the encodings of all of GL(dim, q), in stream order.
std::vector<uint64_t> gl_encodings(const Field& f, uint32_t dim, uint64_t q);

}  // namespace rankforge

#endif
