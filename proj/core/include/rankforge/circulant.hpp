#ifndef RANKFORGE_CIRCULANT_HPP
#define RANKFORGE_CIRCULANT_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "rankforge/linalg.hpp"

namespace rankforge {

// Parameters of the pair of spaces V(m,q), V(n,q) in their k-cyclic models.
// Standing hypothesis: gcd(k,m) = gcd(k,n) = 1.
struct SpaceParams {
  uint32_t p = 2;
  uint32_t h = 1;
  uint64_t q = 2;  // p^h
  uint32_t m = 1, n = 1, k = 1;
  uint32_t e = 1, d = 1;  // gcd and lcm of (m, n)
  uint32_t r = 0;         // n/m when m | n, else 0
};

SpaceParams make_space_params(uint32_t p, uint32_t h, uint32_t m, uint32_t n, uint32_t k);

// An m x n q^k-circulant matrix, given by its length-e generator array over
// F_{q^d} inside the model's big field.
struct CircSpec {
  SpaceParams params;
  std::vector<FEl> gen;  // length e
};

// Index pattern of an m x n q^k-circulant: entry(i,j) = gen[l] ^ (q^sigma).
struct EntryPattern {
  uint32_t l = 0;
  uint32_t sigma = 0;  // exponent of q, reduced mod d
};
EntryPattern circulant_entry_pattern(uint32_t m, uint32_t n, uint32_t k, uint32_t i, uint32_t j);

// Twisted convolution: the generator array of D_a * D_b for square q^k
// circulants, (a o b)_u = sum_{i+j = u mod L} a_i b_j^(q^(twist*i)).
std::vector<FEl> twisted_convolution(const Field& f, uint64_t q, std::span<const FEl> a,
                                     std::span<const FEl> b, uint32_t twist);

// Square r x r twisted circulant: entry(i,j) = gen[(j-i) mod r]^(q^(twist*i)).
Mat expand_square(const Field& f, uint64_t q, std::span<const FEl> gen, uint32_t twist);

// Remark-style reindexing between the q^k-circulant generator of an
// endomorphism and its q-circulant (Dickson) generator: b_i = a_{ih mod r}
// where 1 = lr + hk.
std::vector<FEl> reindex_to_dickson(std::span<const FEl> gen, uint32_t k);
std::vector<FEl> reindex_from_dickson(std::span<const FEl> gen, uint32_t k);

// Generator-level puncturing by the block matrix (I_m | ... | I_m):
// c_j = sum_h a_{(j-hm) mod n} ^ (q^(k h m)).
std::vector<FEl> puncture_array(const Field& f, uint64_t q, uint32_t k, uint32_t m,
                                std::span<const FEl> gen_n);

// Spreads an r-array to the length-n generator supported on multiples of m.
std::vector<FEl> tprime_embed(std::span<const FEl> dickson_gen, uint32_t m, uint32_t n);

// The pair of k-cyclic models for V(m,q) and V(n,q) realized inside the big
// field F_{p^(h*d)}, together with the Singer change-of-basis data. Immutable
// after construction; everything here is safe to share across threads.
class CyclicModel {
 public:
  CyclicModel(uint32_t p, uint32_t h, uint32_t m, uint32_t n, uint32_t k);
  // Same model over an existing big field (its degree must be a multiple of
  // h*lcm(m,n)). Lets the square and punctured models interoperate.
  CyclicModel(std::shared_ptr<const Field> field, uint32_t p, uint32_t h, uint32_t m, uint32_t n,
              uint32_t k);

  // The (m2, n) model over this model's field, for puncturing targets.
  CyclicModel sibling(uint32_t m2) const;

  const SpaceParams& params() const { return prm_; }
  const Field& field() const { return *field_; }
  std::shared_ptr<const Field> field_ptr() const { return field_; }

  FEl w_m() const { return wm_; }  // canonical primitive of F_{q^m}
  FEl w_n() const { return wn_; }
  FEl w_d() const { return wd_; }

  Mat expand(const CircSpec& spec) const;
  CircSpec nu_forward(const Mat& M_f) const;  // NotCirculant on pattern failure
  Mat nu_inverse(const CircSpec& spec) const; // entries verified in F_q

  // Standard F_q matrix of the endomorphism with the given q^k-circulant
  // generator on the chosen side (side m or side n).
  Mat dickson_to_std_m(std::span<const FEl> gen) const;
  Mat dickson_to_std_n(std::span<const FEl> gen) const;

  // Power basis of the canonical subfield primitive (beta_u = w^u).
  std::vector<FEl> power_basis_m() const;
  std::vector<FEl> power_basis_n() const;

  // Change-of-coordinates X = K^{-1} E from the rational basis to the
  // k-cyclic Singer basis, per side, with cached inverses and transposes.
  const Mat& Xm() const { return Xm_; }
  const Mat& Xn() const { return Xn_; }
  const Mat& Xm_inv() const { return Xm_inv_; }
  const Mat& Xn_inv() const { return Xn_inv_; }
  const Mat& Xm_inv_t() const { return Xm_inv_t_; }
  const Mat& Xn_inv_t() const { return Xn_inv_t_; }
  const Mat& Xm_t() const { return Xm_t_; }
  const Mat& Xn_t() const { return Xn_t_; }

  bool in_Fq(FEl x) const { return field_->in_subfield(x, prm_.q, 1); }
  bool in_Fqd(FEl x) const { return field_->in_subfield(x, prm_.q, prm_.d); }

 private:
  SpaceParams prm_;
  std::shared_ptr<const Field> field_;
  FEl wm_, wn_, wd_;
  Mat Xm_, Xn_, Xm_inv_, Xn_inv_, Xm_t_, Xn_t_, Xm_inv_t_, Xn_inv_t_;
  Mat dickson_to_std(std::span<const FEl> gen, uint32_t r, const Mat& X, const Mat& Xinv) const;
};

}  // namespace rankforge

#endif
