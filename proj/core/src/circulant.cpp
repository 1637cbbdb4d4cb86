#include "rankforge/circulant.hpp"

#include <numeric>

namespace rankforge {

SpaceParams make_space_params(uint32_t p, uint32_t h, uint32_t m, uint32_t n, uint32_t k) {
  require(is_prime_u64(p), errc::non_prime, "p = " + std::to_string(p));
  require(h >= 1 && m >= 1 && n >= 1 && k >= 1, errc::bad_parameters, "positive h, m, n, k");
  require(m <= n, errc::bad_parameters, "m <= n required");
  require(std::gcd(k, m) == 1 && std::gcd(k, n) == 1, errc::not_coprime,
          "gcd(k,m) = gcd(k,n) = 1 required");
  SpaceParams prm;
  prm.p = p;
  prm.h = h;
  prm.q = pow_u64(p, h);
  prm.m = m;
  prm.n = n;
  prm.k = k;
  prm.e = std::gcd(m, n);
  prm.d = m / prm.e * n;
  prm.r = (n % m == 0) ? n / m : 0;
  return prm;
}

EntryPattern circulant_entry_pattern(uint32_t m, uint32_t n, uint32_t k, uint32_t i, uint32_t j) {
  require(i < m && j < n, errc::index_out_of_range, "entry index");
  const uint32_t e = std::gcd(m, n);
  const uint32_t d = m / e * n;
  const int64_t diff = int64_t(j) - int64_t(i);
  const uint32_t l = uint32_t(((diff % e) + e) % e);
  // unique beta in [0, n/e) with j - i = l + beta*m (mod n)
  const uint32_t np = n / e, mp = m / e;
  uint64_t delta = uint64_t((((diff - int64_t(l)) % int64_t(n)) + n) % n);
  uint64_t beta = (delta / e) * uint64_t(mod_inverse(int64_t(mp % np), int64_t(np))) % np;
  const uint64_t s = beta * m + i;
  return EntryPattern{l, uint32_t((uint64_t(k) * s) % d)};
}

std::vector<FEl> twisted_convolution(const Field& f, uint64_t q, std::span<const FEl> a,
                                     std::span<const FEl> b, uint32_t twist) {
  require(a.size() == b.size() && !a.empty(), errc::dimension_mismatch, "convolution lengths");
  const uint32_t L = uint32_t(a.size());
  std::vector<FEl> c(L, FEl{});
  for (uint32_t i = 0; i < L; ++i) {
    if (a[i].is_zero()) continue;
    for (uint32_t j = 0; j < L; ++j) {
      if (b[j].is_zero()) continue;
      uint32_t u = (i + j) % L;
      c[u] = f.add(c[u], f.mul(a[i], f.frob(b[j], q, int64_t(twist) * i)));
    }
  }
  return c;
}

Mat expand_square(const Field& f, uint64_t q, std::span<const FEl> gen, uint32_t twist) {
  const uint32_t r = uint32_t(gen.size());
  Mat M(f, r, r);
  for (uint32_t i = 0; i < r; ++i)
    for (uint32_t j = 0; j < r; ++j) {
      uint32_t l = uint32_t(((int64_t(j) - int64_t(i)) % r + r) % r);
      M.at(i, j) = f.frob(gen[l], q, int64_t(twist) * i);
    }
  return M;
}

std::vector<FEl> reindex_to_dickson(std::span<const FEl> gen, uint32_t k) {
  const uint32_t r = uint32_t(gen.size());
  require(std::gcd(k, r) == 1, errc::not_coprime, "gcd(k, r) != 1");
  uint64_t h = uint64_t(mod_inverse(int64_t(k % r), int64_t(r)));  // 1 = lr + hk
  std::vector<FEl> out(r);
  for (uint32_t i = 0; i < r; ++i) out[i] = gen[(uint64_t(i) * h) % r];
  return out;
}

std::vector<FEl> reindex_from_dickson(std::span<const FEl> gen, uint32_t k) {
  const uint32_t r = uint32_t(gen.size());
  require(std::gcd(k, r) == 1, errc::not_coprime, "gcd(k, r) != 1");
  std::vector<FEl> out(r);
  for (uint32_t i = 0; i < r; ++i) out[i] = gen[(uint64_t(i) * k) % r];
  return out;
}

std::vector<FEl> puncture_array(const Field& f, uint64_t q, uint32_t k, uint32_t m,
                                std::span<const FEl> gen_n) {
  const uint32_t n = uint32_t(gen_n.size());
  require(m >= 1 && n % m == 0, errc::not_divisor, "m must divide n");
  const uint32_t r = n / m;
  std::vector<FEl> c(m, FEl{});
  for (uint32_t j = 0; j < m; ++j) {
    for (uint32_t hh = 0; hh < r; ++hh) {
      uint32_t idx = uint32_t(((int64_t(j) - int64_t(hh) * m) % n + n) % n);
      c[j] = f.add(c[j], f.frob(gen_n[idx], q, int64_t(k) * hh * m));
    }
  }
  return c;
}

std::vector<FEl> tprime_embed(std::span<const FEl> dickson_gen, uint32_t m, uint32_t n) {
  require(m >= 1 && n % m == 0, errc::not_divisor, "m must divide n");
  require(dickson_gen.size() == n / m, errc::dimension_mismatch, "generator length != n/m");
  std::vector<FEl> out(n, FEl{});
  for (uint32_t i = 0; i < n / m; ++i) out[uint64_t(i) * m] = dickson_gen[i];
  return out;
}

CyclicModel::CyclicModel(uint32_t p, uint32_t h, uint32_t m, uint32_t n, uint32_t k)
    : CyclicModel(nullptr, p, h, m, n, k) {}

CyclicModel CyclicModel::sibling(uint32_t m2) const {
  return CyclicModel(field_, prm_.p, prm_.h, m2, prm_.n, prm_.k);
}

CyclicModel::CyclicModel(std::shared_ptr<const Field> field, uint32_t p, uint32_t h, uint32_t m,
                         uint32_t n, uint32_t k)
    : prm_(make_space_params(p, h, m, n, k)) {
  if (!field) {
    field_ = std::make_shared<const Field>(Field::make(p, h * prm_.d));
  } else {
    require(field->p() == p && field->degree() % (uint64_t(h) * prm_.d) == 0,
            errc::bad_parameters, "field does not contain F_{q^d}");
    field_ = std::move(field);
  }
  const Field& f = *field_;
  wm_ = f.subfield_primitive(prm_.q, m);
  wn_ = f.subfield_primitive(prm_.q, n);
  wd_ = f.subfield_primitive(prm_.q, prm_.d);
  Mat Em = moore_matrix(f, wm_, m, prm_.q);
  Mat En = moore_matrix(f, wn_, n, prm_.q);
  Mat Km = k_permutation(f, m, k);
  Mat Kn = k_permutation(f, n, k);
  Xm_ = mat_mul(mat_transpose(Km), Em);  // K^{-1} = K^t for permutations
  Xn_ = mat_mul(mat_transpose(Kn), En);
  Xm_inv_ = mat_inverse(Xm_);
  Xn_inv_ = mat_inverse(Xn_);
  Xm_t_ = mat_transpose(Xm_);
  Xn_t_ = mat_transpose(Xn_);
  Xm_inv_t_ = mat_transpose(Xm_inv_);
  Xn_inv_t_ = mat_transpose(Xn_inv_);
}

Mat CyclicModel::expand(const CircSpec& spec) const {
  const SpaceParams& s = spec.params;
  require(s.m == prm_.m && s.n == prm_.n && s.k == prm_.k, errc::dimension_mismatch,
          "spec params do not match the model");
  require(spec.gen.size() == prm_.e, errc::dimension_mismatch, "generator length != e");
  const Field& f = *field_;
  Mat M(f, prm_.m, prm_.n);
  for (uint32_t i = 0; i < prm_.m; ++i)
    for (uint32_t j = 0; j < prm_.n; ++j) {
      EntryPattern pat = circulant_entry_pattern(prm_.m, prm_.n, prm_.k, i, j);
      M.at(i, j) = f.frob(spec.gen[pat.l], prm_.q, pat.sigma);
    }
  return M;
}

CircSpec CyclicModel::nu_forward(const Mat& M_f) const {
  require(M_f.rows == prm_.m && M_f.cols == prm_.n, errc::dimension_mismatch, "form shape");
  Mat D = mat_mul(mat_mul(Xm_inv_t_, M_f), Xn_inv_);
  CircSpec spec;
  spec.params = prm_;
  spec.gen.assign(D.a.begin(), D.a.begin() + prm_.e);  // row 0, entries 0..e-1
  for (FEl g : spec.gen)
    require(in_Fqd(g), errc::not_circulant, "generator entry escaped F_{q^d}");
  require(expand(spec) == D, errc::not_circulant, "nu image failed the circulant pattern");
  return spec;
}

Mat CyclicModel::nu_inverse(const CircSpec& spec) const {
  Mat M = mat_mul(mat_mul(Xm_t_, expand(spec)), Xn_);
  require(mat_in_subfield(M, prm_.q), errc::entry_not_in_field,
          "nu inverse produced entries outside F_q");
  return M;
}

Mat CyclicModel::dickson_to_std(std::span<const FEl> gen, uint32_t r, const Mat& X,
                                const Mat& Xinv) const {
  require(gen.size() == r, errc::dimension_mismatch, "generator length");
  Mat D = expand_square(*field_, prm_.q, gen, prm_.k);
  Mat S = mat_mul(mat_mul(Xinv, D), X);
  require(mat_in_subfield(S, prm_.q), errc::entry_not_in_field,
          "endomorphism matrix not rational over F_q");
  return S;
}

Mat CyclicModel::dickson_to_std_m(std::span<const FEl> gen) const {
  return dickson_to_std(gen, prm_.m, Xm_, Xm_inv_);
}

Mat CyclicModel::dickson_to_std_n(std::span<const FEl> gen) const {
  return dickson_to_std(gen, prm_.n, Xn_, Xn_inv_);
}

std::vector<FEl> CyclicModel::power_basis_m() const {
  std::vector<FEl> b(prm_.m);
  FEl cur = field_->one();
  for (uint32_t i = 0; i < prm_.m; ++i) {
    b[i] = cur;
    cur = field_->mul(cur, wm_);
  }
  return b;
}

std::vector<FEl> CyclicModel::power_basis_n() const {
  std::vector<FEl> b(prm_.n);
  FEl cur = field_->one();
  for (uint32_t i = 0; i < prm_.n; ++i) {
    b[i] = cur;
    cur = field_->mul(cur, wn_);
  }
  return b;
}

}  // namespace rankforge
