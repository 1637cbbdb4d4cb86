#include "rankforge/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace rankforge {

const char* errc_name(errc c) {
  switch (c) {
    case errc::non_prime: return "NonPrime";
    case errc::not_irreducible: return "NotIrreducible";
    case errc::not_primitive: return "NotPrimitive";
    case errc::table_budget_exceeded: return "TableBudgetExceeded";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::not_in_subfield: return "NotInSubfield";
    case errc::no_such_subfield: return "NoSuchSubfield";
    case errc::zero_right_hand_side: return "ZeroRightHandSide";
    case errc::not_a_basis: return "NotABasis";
    case errc::not_in_span: return "NotInSpan";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::singular: return "Singular";
    case errc::not_coprime: return "NotCoprime";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::rank_deficient: return "RankDeficient";
    case errc::not_circulant: return "NotCirculant";
    case errc::not_divisor: return "NotDivisor";
    case errc::entry_not_in_field: return "EntryNotInField";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::transpose_on_rectangular: return "TransposeOnRectangular";
    case errc::bad_parameters: return "BadParameters";
    case errc::invalid_mu: return "InvalidMu";
    case errc::not_independent: return "NotIndependent";
    case errc::constraint_unsatisfiable: return "ConstraintUnsatisfiable";
    case errc::parse_error: return "ParseError";
    case errc::unknown_key: return "UnknownKey";
    case errc::io_error: return "IoError";
  }
  return "UnknownError";
}

bool is_prime_u64(uint64_t x) {
  if (x < 2) return false;
  for (uint64_t d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

std::vector<uint64_t> prime_factors(uint64_t x) {
  std::vector<uint64_t> out;
  for (uint64_t d = 2; d * d <= x; ++d) {
    if (x % d == 0) {
      out.push_back(d);
      while (x % d == 0) x /= d;
    }
  }
  if (x > 1) out.push_back(x);
  return out;
}

uint64_t pow_u64(uint64_t b, uint32_t e) {
  uint64_t r = 1;
  for (uint32_t i = 0; i < e; ++i) {
    require(b == 0 || r <= UINT64_MAX / (b ? b : 1), errc::bad_parameters, "integer power overflow");
    r *= b;
  }
  return r;
}

uint64_t powmod_u64(uint64_t b, uint64_t e, uint64_t m) {
  if (m == 1) return 0;
  unsigned __int128 r = 1, base = b % m;
  while (e) {
    if (e & 1) r = r * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return uint64_t(r);
}

uint64_t gcd_u64(uint64_t a, uint64_t b) { return std::gcd(a, b); }

int64_t mod_inverse(int64_t a, int64_t m) {
  int64_t g = m, x = 0, x1 = 1, a1 = ((a % m) + m) % m;
  int64_t g1 = a1;
  // invariant: g = m*? + a*x, g1 = m*? + a*x1
  while (g1 != 0) {
    int64_t qt = g / g1;
    g -= qt * g1; std::swap(g, g1);
    x -= qt * x1; std::swap(x, x1);
  }
  require(g == 1, errc::bad_parameters, "element not invertible in modular ring");
  return ((x % m) + m) % m;
}

namespace {

// Dense polynomials over F_p, little-endian coefficients.
using Poly = std::vector<uint32_t>;

void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, Poly b, uint32_t p);

// a*b mod f, f monic of degree E; a and b already reduced (size <= E).
Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, uint32_t p) {
  const size_t E = f.size() - 1;
  Poly prod(2 * E, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      prod[i + j] = uint32_t((prod[i + j] + uint64_t(a[i]) * b[j]) % p);
  }
  for (size_t d = prod.size(); d-- > E;) {
    uint32_t c = prod[d];
    if (!c) continue;
    prod[d] = 0;
    for (size_t j = 0; j < E; ++j)
      prod[d - E + j] = uint32_t((prod[d - E + j] + uint64_t(c) * (p - f[j])) % p);
  }
  prod.resize(E);
  return prod;
}

Poly poly_powmod(Poly base, uint64_t e, const Poly& f, uint32_t p) {
  const size_t E = f.size() - 1;
  base = poly_mod(std::move(base), f, p);
  base.resize(E, 0);
  Poly r{1};
  r.resize(E, 0);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

bool poly_is_one(Poly a) {
  poly_trim(a);
  return a.size() == 1 && a[0] == 1;
}

Poly poly_mod(Poly a, Poly b, uint32_t p) {
  poly_trim(a);
  poly_trim(b);
  if (b.empty()) return a;
  uint32_t lead_inv = uint32_t(mod_inverse(int64_t(b.back()), int64_t(p)));
  while (a.size() >= b.size()) {
    uint64_t c = uint64_t(a.back()) * lead_inv % p;
    size_t off = a.size() - b.size();
    for (size_t j = 0; j < b.size(); ++j)
      a[off + j] = uint32_t((a[off + j] + c * (p - b[j])) % p);
    poly_trim(a);
    if (a.empty()) break;
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b, uint32_t p) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^j) mod f via iterated Frobenius.
Poly x_frob_power(uint32_t j, const Poly& f, uint32_t p) {
  Poly t{0, 1};
  t.resize(f.size() - 1, 0);
  for (uint32_t i = 0; i < j; ++i) t = poly_powmod(t, p, f, p);
  return t;
}

bool poly_irreducible(const Poly& f, uint32_t p) {
  const uint32_t E = uint32_t(f.size()) - 1;
  if (E == 1) return true;
  Poly xpE = x_frob_power(E, f, p);
  Poly x{0, 1};
  x.resize(E, 0);
  if (xpE != x) return false;
  for (uint64_t r : prime_factors(E)) {
    Poly t = x_frob_power(uint32_t(E / r), f, p);
    // gcd(x^(p^(E/r)) - x, f) must be trivial
    Poly diff = t;
    diff.resize(std::max(diff.size(), x.size()), 0);
    for (size_t i = 0; i < x.size(); ++i) diff[i] = (diff[i] + p - x[i]) % p;
    Poly g = poly_gcd(f, diff, p);
    if (!(g.size() == 1)) return false;
  }
  return true;
}

bool poly_primitive(const Poly& f, uint32_t p, uint64_t group_order) {
  Poly x{0, 1};
  if (!poly_is_one(poly_powmod(x, group_order, f, p))) return false;
  for (uint64_t r : prime_factors(group_order)) {
    if (poly_is_one(poly_powmod(x, group_order / r, f, p))) return false;
  }
  return true;
}

std::vector<uint32_t> default_modulus(uint32_t p, uint32_t E) {
  static std::mutex mu;
  static std::map<std::pair<uint32_t, uint32_t>, std::vector<uint32_t>> cache;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find({p, E});
    if (it != cache.end()) return it->second;
  }
  const uint64_t gorder = pow_u64(p, E) - 1;
  // The constant term of a primitive polynomial is (-1)^E times the norm of a
  // primitive root, so it must be (-1)^E times a generator of F_p^x.
  std::vector<bool> c0_ok(p, false);
  for (uint32_t u = 1; u < p; ++u) {
    bool gen = true;
    for (uint64_t r : prime_factors(p - 1))
      if (powmod_u64(u, (p - 1) / r, p) == 1) gen = false;
    if (p == 2) gen = true;
    if (gen) c0_ok[(E % 2 == 0 ? u : (p - u) % p)] = true;
  }
  // Lexicographically smallest little-endian tuple (c_0,...,c_{E-1}): odometer
  // with c_0 slowest. c_0 = 0 never yields a primitive polynomial.
  std::vector<uint32_t> digits(E, 0);
  digits[0] = 1;
  while (true) {
    Poly f(digits.begin(), digits.end());
    f.push_back(1);
    bool candidate = c0_ok[f[0]];
    if (candidate && E >= 2) {
      uint64_t at1 = 0;
      for (uint32_t c : f) at1 += c;
      if (at1 % p == 0) candidate = false;  // root 1
      if (candidate && !poly_irreducible(f, p)) candidate = false;
    }
    if (candidate && poly_primitive(f, p, gorder)) {
      std::lock_guard<std::mutex> lk(mu);
      cache[{p, E}] = f;
      return f;
    }
    size_t pos = E;
    while (pos-- > 0) {
      if (++digits[pos] < p) break;
      digits[pos] = 0;
      if (pos == 0) fail(errc::not_primitive, "no primitive polynomial found (impossible)");
    }
  }
}

}  // namespace

Field Field::make(uint32_t p, uint32_t E) {
  require(is_prime_u64(p), errc::non_prime, "p = " + std::to_string(p));
  require(E >= 1, errc::bad_parameters, "E must be positive");
  require(pow_u64(p, E) <= kTableBudget, errc::table_budget_exceeded,
          "field order " + std::to_string(pow_u64(p, E)) + " exceeds table budget");
  return make(p, E, default_modulus(p, E));
}

Field Field::make(uint32_t p, uint32_t E, const std::vector<uint32_t>& modulus) {
  require(is_prime_u64(p), errc::non_prime, "p = " + std::to_string(p));
  require(E >= 1, errc::bad_parameters, "E must be positive");
  uint64_t order = pow_u64(p, E);
  require(order <= kTableBudget, errc::table_budget_exceeded,
          "field order " + std::to_string(order) + " exceeds table budget");
  require(modulus.size() == size_t(E) + 1 && modulus.back() == 1, errc::bad_parameters,
          "modulus must be monic of degree E");
  for (uint32_t c : modulus)
    require(c < p, errc::bad_parameters, "modulus coefficient out of range");
  if (E >= 2)
    require(poly_irreducible(modulus, p), errc::not_irreducible, "modulus is reducible");
  require(poly_primitive(modulus, p, order - 1), errc::not_primitive,
          "modulus root does not generate the multiplicative group");

  Field f;
  f.spec_ = FieldSpec{p, E, modulus};
  f.order_ = order;
  f.gorder_ = order - 1;
  f.build_tables();
  return f;
}

void Field::build_tables() {
  const uint32_t p = spec_.p, E = spec_.E;
  const uint64_t N = gorder_;
  exp_.assign(N, 0);
  log_.assign(order_, FEl::kZero);
  zech_.assign(N, FEl::kZero);

  std::vector<uint32_t> cur(E, 0);
  cur[0] = 1;
  for (uint64_t i = 0; i < N; ++i) {
    uint64_t packed = 0;
    for (uint32_t j = E; j-- > 0;) packed = packed * p + cur[j];
    exp_[i] = uint32_t(packed);
    log_[packed] = uint32_t(i);
    // multiply by x and reduce
    uint32_t carry = cur[E - 1];
    for (uint32_t j = E; j-- > 1;) cur[j] = cur[j - 1];
    cur[0] = 0;
    if (carry) {
      for (uint32_t j = 0; j < E; ++j)
        cur[j] = (cur[j] + carry * (p - spec_.modulus[j])) % p;
    }
  }
  for (uint64_t i = 0; i < N; ++i) {
    uint32_t v = exp_[i];
    uint32_t c0 = v % p;
    uint32_t v2 = v - c0 + ((c0 + 1) % p);
    zech_[i] = (v2 == 0) ? FEl::kZero : log_[v2];
  }
}

FEl Field::gen() const {
  // exp_[1] is the modulus root x; F_2 degenerates to g = 1.
  return FEl{gorder_ == 1 ? 0u : 1u};
}

FEl Field::add(FEl a, FEl b) const {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const uint64_t N = gorder_;
  if (N == 1) return FEl{};  // 1 + 1 = 0 in F_2
  uint64_t d = (b.v + N - a.v) % N;
  uint32_t z = zech_[d];
  if (z == FEl::kZero) return FEl{};
  return FEl{uint32_t((a.v + z) % N)};
}

FEl Field::neg(FEl a) const {
  if (a.is_zero() || spec_.p == 2) return a;
  return FEl{uint32_t((a.v + gorder_ / 2) % gorder_)};
}

FEl Field::mul(FEl a, FEl b) const {
  if (a.is_zero() || b.is_zero()) return FEl{};
  return FEl{uint32_t((uint64_t(a.v) + b.v) % gorder_)};
}

FEl Field::inv(FEl a) const {
  require(!a.is_zero(), errc::division_by_zero, "inverse of zero");
  return FEl{uint32_t((gorder_ - a.v) % gorder_)};
}

FEl Field::pow(FEl a, int64_t e) const {
  if (a.is_zero()) {
    if (e > 0) return FEl{};
    if (e == 0) return one();
    fail(errc::division_by_zero, "negative power of zero");
  }
  int64_t N = int64_t(gorder_);
  int64_t r = ((e % N) + N) % N;
  return FEl{uint32_t((uint64_t(a.v) * uint64_t(r)) % gorder_)};
}

FEl Field::frob_p(FEl a, int64_t e) const {
  if (a.is_zero()) return a;
  int64_t E = int64_t(spec_.E);
  uint64_t em = uint64_t(((e % E) + E) % E);
  uint64_t t = powmod_u64(spec_.p, em, gorder_);
  return FEl{uint32_t((uint64_t(a.v) * t) % gorder_)};
}

uint32_t Field::q_exponent(uint64_t q) const {
  require(q >= 2, errc::bad_parameters, "q must be at least 2");
  uint32_t c = 0;
  uint64_t t = q;
  while (t % spec_.p == 0) {
    t /= spec_.p;
    ++c;
  }
  require(t == 1 && c >= 1, errc::bad_parameters,
          "q = " + std::to_string(q) + " is not a power of p = " + std::to_string(spec_.p));
  return c;
}

FEl Field::frob(FEl a, uint64_t q, int64_t j) const {
  uint32_t c = q_exponent(q);
  return frob_p(a, int64_t(c) * j);
}

void Field::check_subfield(uint64_t q, uint32_t D, errc code) const {
  uint64_t cd = uint64_t(q_exponent(q)) * D;
  require(D >= 1 && cd <= spec_.E && spec_.E % cd == 0, code,
          "F_{q^D} with q=" + std::to_string(q) + ", D=" + std::to_string(D) +
              " is not a subfield of F_{p^" + std::to_string(spec_.E) + "}");
}

FEl Field::trace(FEl x, uint64_t q, uint32_t D) const {
  check_subfield(q, D, errc::not_in_subfield);
  require(in_subfield(x, q, D), errc::not_in_subfield, "trace argument outside F_{q^D}");
  FEl s = x, y = x;
  for (uint32_t i = 1; i < D; ++i) {
    y = frob(y, q, 1);
    s = add(s, y);
  }
  return s;
}

FEl Field::norm(FEl x, uint64_t q, uint32_t D) const {
  check_subfield(q, D, errc::not_in_subfield);
  require(in_subfield(x, q, D), errc::not_in_subfield, "norm argument outside F_{q^D}");
  if (x.is_zero()) return x;
  uint64_t e = (pow_u64(q, D) - 1) / (q - 1);
  return pow(x, int64_t(e));
}

FEl Field::subfield_primitive(uint64_t q, uint32_t M) const {
  check_subfield(q, M, errc::no_such_subfield);
  uint64_t sub = pow_u64(q, M) - 1;
  return FEl{uint32_t(gorder_ / sub)};
}

bool Field::in_subfield(FEl x, uint64_t q, uint32_t M) const {
  check_subfield(q, M, errc::no_such_subfield);
  if (x.is_zero()) return true;
  uint64_t sub = pow_u64(q, M) - 1;
  return (uint64_t(x.v) * sub) % gorder_ == 0;
}

std::vector<FEl> Field::subfield_elements(uint64_t q, uint32_t M) const {
  check_subfield(q, M, errc::no_such_subfield);
  uint32_t c = q_exponent(q) * M;  // F_{q^M} = F_{p^c}
  uint64_t size = pow_u64(spec_.p, c);
  FEl ws = subfield_primitive(spec_.p, c);
  std::vector<FEl> pows(c);
  FEl cur = one();
  for (uint32_t i = 0; i < c; ++i) {
    pows[i] = cur;
    cur = mul(cur, ws);
  }
  std::vector<FEl> out(size);
  for (uint64_t idx = 0; idx < size; ++idx) {
    FEl acc{};
    uint64_t t = idx;
    for (uint32_t i = 0; i < c && t; ++i) {
      uint32_t digit = uint32_t(t % spec_.p);
      t /= spec_.p;
      FEl term{};
      for (uint32_t d = 0; d < digit; ++d) term = add(term, pows[i]);
      acc = add(acc, term);
    }
    out[idx] = acc;
  }
  return out;
}

std::vector<FEl> Field::solve_power_equation(uint64_t q, uint32_t n, int64_t N, FEl c) const {
  check_subfield(q, n, errc::no_such_subfield);
  require(!c.is_zero(), errc::zero_right_hand_side, "right-hand side must be nonzero");
  require(in_subfield(c, q, n), errc::not_in_subfield, "right-hand side outside F_{q^n}");
  const uint64_t Q = pow_u64(q, n) - 1;
  const uint64_t step = gorder_ / Q;
  const uint64_t z = c.v / step;
  int64_t Nr = ((N % int64_t(Q)) + int64_t(Q)) % int64_t(Q);
  std::vector<FEl> out;
  if (Nr == 0) {
    if (z != 0) return out;
    out.reserve(Q);
    for (uint64_t y = 0; y < Q; ++y) out.push_back(FEl{uint32_t(step * y)});
    return out;
  }
  uint64_t g = gcd_u64(uint64_t(Nr), Q);
  if (z % g != 0) return out;
  uint64_t Qg = Q / g;
  uint64_t y0 = (uint64_t(mod_inverse(Nr / int64_t(g), int64_t(Qg))) * ((z / g) % Qg)) % Qg;
  out.reserve(g);
  for (uint64_t t = 0; t < g; ++t) out.push_back(FEl{uint32_t(step * (y0 + t * Qg))});
  return out;
}

std::vector<FEl> Field::coords(FEl x, std::span<const FEl> basis, uint64_t q) const {
  const uint32_t c = q_exponent(q);
  const uint32_t p = spec_.p, E = spec_.E;
  require(!basis.empty(), errc::not_a_basis, "empty basis");
  FEl wq = subfield_primitive(spec_.p, c);

  // Flatten the F_q-linear system to F_p: unknown d_{ij} with
  // x = sum_{i,j} d_{ij} (wq^j * basis_i).
  const size_t cols = basis.size() * c;
  auto digits = [&](FEl a) {
    std::vector<uint32_t> d(E, 0);
    uint64_t v = to_int(a);
    for (uint32_t i = 0; i < E; ++i) {
      d[i] = uint32_t(v % p);
      v /= p;
    }
    return d;
  };
  std::vector<std::vector<uint32_t>> M(E, std::vector<uint32_t>(cols + 1, 0));
  FEl wpow = one();
  for (uint32_t j = 0; j < c; ++j) {
    for (size_t i = 0; i < basis.size(); ++i) {
      auto col = digits(mul(wpow, basis[i]));
      for (uint32_t r = 0; r < E; ++r) M[r][i * c + j] = col[r];
    }
    wpow = mul(wpow, wq);
  }
  auto rhs = digits(x);
  for (uint32_t r = 0; r < E; ++r) M[r][cols] = rhs[r];

  // Gauss-Jordan over F_p.
  std::vector<size_t> pivot_col;
  size_t row = 0;
  for (size_t col = 0; col < cols && row < E; ++col) {
    size_t pr = row;
    while (pr < E && M[pr][col] == 0) ++pr;
    if (pr == E) continue;
    std::swap(M[pr], M[row]);
    uint64_t pinv = uint64_t(mod_inverse(int64_t(M[row][col]), int64_t(p)));
    for (size_t j2 = col; j2 <= cols; ++j2) M[row][j2] = uint32_t(M[row][j2] * pinv % p);
    for (size_t r2 = 0; r2 < E; ++r2) {
      if (r2 == row || M[r2][col] == 0) continue;
      uint64_t f = M[r2][col];
      for (size_t j2 = col; j2 <= cols; ++j2)
        M[r2][j2] = uint32_t((M[r2][j2] + f * (p - M[row][j2])) % p);
    }
    pivot_col.push_back(col);
    ++row;
  }
  require(pivot_col.size() == cols, errc::not_a_basis, "basis is F_q-dependent");
  for (size_t r2 = row; r2 < E; ++r2)
    require(M[r2][cols] == 0, errc::not_in_span, "element outside the basis span");

  std::vector<FEl> out(basis.size(), FEl{});
  for (size_t k2 = 0; k2 < pivot_col.size(); ++k2) {
    size_t col = pivot_col[k2];
    uint32_t digit = M[k2][cols];
    if (!digit) continue;
    size_t i = col / c, j = col % c;
    FEl term{};
    FEl wj = pow(wq, int64_t(j));
    for (uint32_t d = 0; d < digit; ++d) term = add(term, wj);
    out[i] = add(out[i], term);
  }
  return out;
}

FEl Field::uncoords(std::span<const FEl> coeffs, std::span<const FEl> basis) const {
  require(coeffs.size() == basis.size(), errc::dimension_mismatch, "coords/basis size mismatch");
  FEl acc{};
  for (size_t i = 0; i < coeffs.size(); ++i) acc = add(acc, mul(coeffs[i], basis[i]));
  return acc;
}

uint64_t Field::to_int(FEl a) const { return a.is_zero() ? 0 : exp_[a.v]; }

FEl Field::from_int(uint64_t v) const {
  require(v < order_, errc::index_out_of_range, "canonical integer out of range");
  if (v == 0) return FEl{};
  uint32_t lg = log_[v];
  require(lg != FEl::kZero || exp_[0] == v, errc::parse_error, "not a canonical element integer");
  return FEl{lg};
}

uint64_t Field::element_order(FEl a) const {
  if (a.is_zero()) return 0;
  return gorder_ / gcd_u64(gorder_, a.v);
}

Field::SmallTables Field::small_tables(uint64_t q) const {
  uint32_t c = q_exponent(q);
  SmallTables t;
  t.q = q;
  t.elems = subfield_elements(spec_.p, c);
  t.add.assign(size_t(q) * q, 0);
  t.mul.assign(size_t(q) * q, 0);
  t.neg.assign(size_t(q), 0);
  auto idx_of = [&](FEl x) {
    for (size_t i = 0; i < t.elems.size(); ++i)
      if (t.elems[i] == x) return uint8_t(i);
    fail(errc::entry_not_in_field, "element escaped the subfield");
  };
  for (uint64_t i = 0; i < q; ++i) {
    t.neg[i] = idx_of(neg(t.elems[i]));
    for (uint64_t j = 0; j < q; ++j) {
      t.add[i * q + j] = idx_of(add(t.elems[i], t.elems[j]));
      t.mul[i * q + j] = idx_of(mul(t.elems[i], t.elems[j]));
    }
  }
  return t;
}

uint8_t Field::small_index(FEl x, uint64_t q) const {
  uint32_t c = q_exponent(q);
  require(in_subfield(x, spec_.p, c), errc::entry_not_in_field, "entry outside F_q");
  auto elems = subfield_elements(spec_.p, c);
  for (size_t i = 0; i < elems.size(); ++i)
    if (elems[i] == x) return uint8_t(i);
  fail(errc::entry_not_in_field, "entry outside F_q");
}

}  // namespace rankforge
