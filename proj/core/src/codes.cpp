#include "rankforge/codes.hpp"

#include <chrono>
#include <thread>

namespace rankforge {

const char* code_kind_name(CodeKind k) {
  switch (k) {
    case CodeKind::Phi: return "Phi";
    case CodeKind::TwistedSquare: return "TwistedSquare";
    case CodeKind::TwistedPunctured: return "TwistedPunctured";
    case CodeKind::GabidulinEval: return "GabidulinEval";
    case CodeKind::PuncturedBy: return "PuncturedBy";
  }
  return "Unknown";
}

uint64_t Code::size() const { return pow_u64(model->params().q, dim()); }

namespace {

// Independence of the generators as F_q-vectors.
void check_generators_independent(const Code& code) {
  const CyclicModel& model = *code.model;
  const Field& F = model.field();
  const uint32_t mn = model.params().m * model.params().n;
  Mat flat(F, code.dim(), mn);
  for (uint32_t u = 0; u < code.dim(); ++u)
    for (uint32_t idx = 0; idx < mn; ++idx) flat.at(u, idx) = code.gens[u].a[idx];
  require(mat_rank(flat) == code.dim(), errc::not_independent,
          "generator basis is F_q-dependent");
}

void attach_circ_gens(Code& code, std::vector<std::vector<FEl>> arrays) {
  const CyclicModel& model = *code.model;
  code.gens_circ = std::move(arrays);
  code.gens.clear();
  code.gens.reserve(code.gens_circ.size());
  for (const auto& gen : code.gens_circ) {
    CircSpec spec{model.params(), gen};
    code.gens.push_back(model.nu_inverse(spec));
  }
}

FEl minus_one_power(const Field& F, uint64_t exponent) {
  return exponent % 2 == 0 ? F.one() : F.neg(F.one());
}

}  // namespace

Code build_phi(const CyclicModel& model, uint32_t t) {
  const SpaceParams& prm = model.params();
  require(prm.r >= 1, errc::bad_parameters, "Phi requires m | n");
  require(t >= 1 && t <= prm.m, errc::bad_parameters, "t must lie in [1, m]");
  Code code;
  code.model = &model;
  code.kind = CodeKind::Phi;
  code.t = t;
  std::vector<std::vector<FEl>> arrays;
  arrays.reserve(size_t(prm.n) * t);
  auto beta = model.power_basis_n();
  for (uint32_t j = 0; j < t; ++j)
    for (uint32_t u = 0; u < prm.n; ++u) {
      std::vector<FEl> gen(prm.e, FEl{});
      gen[j] = beta[u];
      arrays.push_back(std::move(gen));
    }
  attach_circ_gens(code, std::move(arrays));
  check_generators_independent(code);
  return code;
}

Code build_twisted(const CyclicModel& model, uint32_t t, FEl mu, uint32_t s) {
  const SpaceParams& prm = model.params();
  const Field& F = model.field();
  require(prm.r >= 1, errc::bad_parameters, "twisted codes require m | n");
  require(t >= 1 && t <= prm.m - 1, errc::bad_parameters, "t must lie in [1, m-1]");
  require(!mu.is_zero(), errc::invalid_mu, "mu must be nonzero");
  require(F.in_subfield(mu, prm.q, prm.n), errc::invalid_mu, "mu must lie in F_{q^n}");
  FEl sign = minus_one_power(F, uint64_t(prm.n) * t);
  require(F.norm(mu, prm.q, prm.n) != sign, errc::invalid_mu,
          "N_{q^n/q}(mu) = (-1)^(nt); no twisted code exists (always the case at q = 2)");

  Code code;
  code.model = &model;
  code.kind = prm.m == prm.n ? CodeKind::TwistedSquare : CodeKind::TwistedPunctured;
  code.t = t;
  code.mu = mu;
  code.s = s;
  std::vector<std::vector<FEl>> arrays;
  arrays.reserve(size_t(prm.n) * t);
  auto beta = model.power_basis_n();
  for (uint32_t u = 0; u < prm.n; ++u) {
    std::vector<FEl> gen(prm.e, FEl{});
    gen[0] = beta[u];
    gen[t] = F.mul(mu, F.frob(beta[u], prm.q, int64_t(s) * prm.k));
    arrays.push_back(std::move(gen));
  }
  for (uint32_t j = 1; j < t; ++j)
    for (uint32_t u = 0; u < prm.n; ++u) {
      std::vector<FEl> gen(prm.e, FEl{});
      gen[j] = beta[u];
      arrays.push_back(std::move(gen));
    }
  attach_circ_gens(code, std::move(arrays));
  check_generators_independent(code);
  return code;
}

Code gabidulin_eval(const CyclicModel& model, const std::vector<FEl>& gpoints, uint32_t t) {
  const SpaceParams& prm = model.params();
  const Field& F = model.field();
  require(gpoints.size() == prm.m, errc::bad_parameters, "need exactly m evaluation points");
  require(t >= 1 && t <= prm.m, errc::bad_parameters, "t must lie in [1, m]");
  for (FEl g : gpoints)
    require(F.in_subfield(g, prm.q, prm.n), errc::not_in_subfield, "points must lie in F_{q^n}");
  // Moore-matrix independence test
  Mat moore(F, prm.m, prm.m);
  for (uint32_t i = 0; i < prm.m; ++i)
    for (uint32_t j = 0; j < prm.m; ++j) moore.at(i, j) = F.frob(gpoints[j], prm.q, i);
  require(mat_rank(moore) == prm.m, errc::not_independent,
          "evaluation points are F_q-dependent");

  Code code;
  code.model = &model;
  code.kind = CodeKind::GabidulinEval;
  code.t = t;
  code.gpoints = gpoints;
  auto beta = model.power_basis_n();
  for (uint32_t l = 0; l < t; ++l)
    for (uint32_t u = 0; u < prm.n; ++u) {
      // P(y) = beta_u * y^(q^(k l)); row i of the word is the trace-dual
      // coordinate vector of P(g_i).
      Mat W(F, prm.m, prm.n);
      for (uint32_t i = 0; i < prm.m; ++i) {
        FEl val = F.mul(beta[u], F.frob(gpoints[i], prm.q, int64_t(prm.k) * l));
        for (uint32_t j = 0; j < prm.n; ++j)
          W.at(i, j) = F.trace(F.mul(beta[j], val), prm.q, prm.n);
      }
      require(mat_in_subfield(W, prm.q), errc::entry_not_in_field, "word escaped F_q");
      code.gens.push_back(std::move(W));
    }
  check_generators_independent(code);
  return code;
}

Code puncture_code(const CyclicModel& target, const Code& code, const Mat& A) {
  const CyclicModel& src = *code.model;
  require(&target.field() == &src.field(), errc::bad_parameters,
          "target model must share the source field");
  require(target.params().n == src.params().n && target.params().k == src.params().k &&
              target.params().q == src.params().q,
          errc::bad_parameters, "target model mismatch");
  require(A.rows == target.params().m && A.cols == src.params().m, errc::dimension_mismatch,
          "puncturing matrix shape");
  require(mat_in_subfield(A, target.params().q), errc::entry_not_in_field, "A must be over F_q");
  require(mat_rank(A) == A.rows, errc::rank_deficient, "puncturing matrix must have rank m");

  Code out;
  out.model = &target;
  out.kind = CodeKind::PuncturedBy;
  out.t = code.t;
  out.mu = code.mu;
  out.s = code.s;
  for (const Mat& G : code.gens) out.gens.push_back(mat_mul(A, G));
  check_generators_independent(out);  // injectivity: |A X| = |X|
  return out;
}

Code puncture_code_block(const CyclicModel& target, const Code& code) {
  const CyclicModel& src = *code.model;
  require(&target.field() == &src.field(), errc::bad_parameters,
          "target model must share the source field");
  require(src.params().m == src.params().n, errc::bad_parameters,
          "block puncturing starts from a square code");
  require(!code.gens_circ.empty(), errc::bad_parameters,
          "block puncturing needs a circulant-structured code");
  const SpaceParams& prm = target.params();
  require(prm.n == src.params().n && prm.k == src.params().k && prm.r >= 1,
          errc::bad_parameters, "target model mismatch");

  Code out;
  out.model = &target;
  out.kind = CodeKind::PuncturedBy;
  out.t = code.t;
  out.mu = code.mu;
  out.s = code.s;
  std::vector<std::vector<FEl>> arrays;
  for (const auto& gen : code.gens_circ)
    arrays.push_back(puncture_array(src.field(), prm.q, prm.k, prm.m, gen));
  attach_circ_gens(out, std::move(arrays));
  check_generators_independent(out);
  return out;
}

CodeIndex::CodeIndex(const Code& code) {
  const CyclicModel& model = *code.model;
  const Field& F = model.field();
  f_ = &F;
  cols_ = model.params().m * model.params().n;
  for (const Mat& G : code.gens) {
    std::vector<FEl> row(G.a);
    // reduce against existing rows
    for (size_t rr = 0; rr < rows_.size(); ++rr) {
      FEl x = row[pivots_[rr]];
      if (x.is_zero()) continue;
      for (uint32_t j = 0; j < cols_; ++j) row[j] = F.sub(row[j], F.mul(x, rows_[rr][j]));
    }
    uint32_t piv = cols_;
    for (uint32_t j = 0; j < cols_; ++j)
      if (!row[j].is_zero()) {
        piv = j;
        break;
      }
    require(piv < cols_, errc::not_independent, "dependent generator in index");
    FEl pinv = F.inv(row[piv]);
    for (uint32_t j = 0; j < cols_; ++j) row[j] = F.mul(row[j], pinv);
    for (size_t rr = 0; rr < rows_.size(); ++rr) {
      FEl x = rows_[rr][piv];
      if (x.is_zero()) continue;
      for (uint32_t j = 0; j < cols_; ++j)
        rows_[rr][j] = F.sub(rows_[rr][j], F.mul(x, row[j]));
    }
    rows_.push_back(std::move(row));
    pivots_.push_back(piv);
  }
}

bool CodeIndex::member(const Mat& M) const {
  require(M.f == f_, errc::dimension_mismatch, "matrix over a different field");
  require(M.a.size() == cols_, errc::dimension_mismatch, "matrix shape");
  const Field& F = *f_;
  std::vector<FEl> row(M.a);
  for (size_t rr = 0; rr < rows_.size(); ++rr) {
    FEl x = row[pivots_[rr]];
    if (x.is_zero()) continue;
    for (uint32_t j = 0; j < cols_; ++j) row[j] = F.sub(row[j], F.mul(x, rows_[rr][j]));
  }
  for (uint32_t j = 0; j < cols_; ++j)
    if (!row[j].is_zero()) return false;
  return true;
}

bool CodeIndex::member_form(const Form& f) const { return member(form_std_copy(f)); }

bool code_equal(const Code& a, const Code& b) {
  if (a.dim() != b.dim()) return false;
  if (a.model->params().m != b.model->params().m || a.model->params().n != b.model->params().n)
    return false;
  require(&a.model->field() == &b.model->field(), errc::bad_parameters,
          "codes must live over the same field instance");
  CodeIndex ib(b);
  for (const Mat& G : a.gens)
    if (!ib.member(G)) return false;
  return true;  // equal dimension + containment
}

Mat word_at(const Code& code, uint64_t idx) {
  const CyclicModel& model = *code.model;
  const Field& F = model.field();
  const uint64_t q = model.params().q;
  auto elems = F.subfield_elements(q, 1);
  Mat W = Mat::zero(F, model.params().m, model.params().n);
  for (uint32_t u = 0; u < code.dim() && idx; ++u) {
    uint64_t digit = idx % q;
    idx /= q;
    if (!digit) continue;
    W = mat_add(W, mat_scale(code.gens[u], elems[digit]));
  }
  return W;
}

namespace {

// Raw scan state: generators and the running word as small-index bytes.
struct RawScan {
  uint64_t q;
  uint32_t m, n, dim;
  Field::SmallTables tab;
  std::vector<std::vector<uint8_t>> gens;  // dim x (m*n)
  std::vector<std::vector<uint8_t>> scaled_diff;  // dim*q: (new-old) scaled generators

  explicit RawScan(const Code& code) {
    const CyclicModel& model = *code.model;
    const Field& F = model.field();
    q = model.params().q;
    m = model.params().m;
    n = model.params().n;
    dim = code.dim();
    tab = F.small_tables(q);
    gens.resize(dim);
    for (uint32_t u = 0; u < dim; ++u) {
      gens[u].resize(size_t(m) * n);
      for (size_t i = 0; i < gens[u].size(); ++i) gens[u][i] = F.small_index(code.gens[u].a[i], q);
    }
  }

  void add_scaled(std::vector<uint8_t>& word, uint32_t u, uint8_t from, uint8_t to) const {
    // word += (to - from) * G_u
    uint8_t delta = tab.at_add(to, tab.neg[from]);
    if (!delta) return;
    const auto& g = gens[u];
    for (size_t i = 0; i < word.size(); ++i)
      word[i] = tab.at_add(word[i], tab.at_mul(delta, g[i]));
  }

  uint32_t rank_of(std::vector<uint8_t> w) const {
    uint32_t rank = 0;
    for (uint32_t col = 0; col < n && rank < m; ++col) {
      uint32_t pivot = rank;
      while (pivot < m && w[size_t(pivot) * n + col] == 0) ++pivot;
      if (pivot == m) continue;
      if (pivot != rank)
        for (uint32_t j = col; j < n; ++j)
          std::swap(w[size_t(pivot) * n + j], w[size_t(rank) * n + j]);
      uint8_t pinv = 1;
      // find inverse by scanning (q is tiny)
      for (uint8_t c = 1; c < q; ++c)
        if (tab.at_mul(w[size_t(rank) * n + col], c) == 1) pinv = c;
      for (uint32_t r = rank + 1; r < m; ++r) {
        uint8_t x = w[size_t(r) * n + col];
        if (!x) continue;
        uint8_t factor = tab.at_mul(x, pinv);
        for (uint32_t j = col; j < n; ++j) {
          uint8_t sub = tab.at_mul(factor, w[size_t(rank) * n + j]);
          w[size_t(r) * n + j] = tab.at_add(w[size_t(r) * n + j], tab.neg[sub]);
        }
      }
      ++rank;
    }
    return rank;
  }
};

struct ChunkResult {
  uint32_t min_rank = UINT32_MAX;
  std::map<uint32_t, uint64_t> hist;
};

// Representatives: first nonzero coefficient equal to 1. For a given leading
// generator index L the free digits are those above L, odometer order.
ChunkResult scan_range(const RawScan& raw, uint64_t lo, uint64_t hi, bool want_hist) {
  ChunkResult res;
  const uint64_t q = raw.q;
  const uint32_t dim = raw.dim;
  // cumulative representative counts per leading index: q^(dim-1-L)
  std::vector<uint64_t> block(dim);
  for (uint32_t L = 0; L < dim; ++L) block[L] = pow_u64(q, dim - 1 - L);
  uint64_t pos = 0;
  std::vector<uint8_t> digits(dim, 0);
  std::vector<uint8_t> word(size_t(raw.m) * raw.n, 0);
  for (uint32_t L = 0; L < dim; ++L) {
    if (pos + block[L] <= lo) {
      pos += block[L];
      continue;
    }
    uint64_t start = lo > pos ? lo - pos : 0;
    uint64_t stop = std::min(block[L], hi - pos);
    if (start >= stop) {
      pos += block[L];
      if (pos >= hi) break;
      continue;
    }
    // initialize digits for (L, start): digit L fixed to 1, higher digits from start
    std::fill(digits.begin(), digits.end(), 0);
    std::fill(word.begin(), word.end(), 0);
    digits[L] = 1;
    raw.add_scaled(word, L, 0, 1);
    uint64_t t = start;
    for (uint32_t u = L + 1; u < dim && t; ++u) {
      uint8_t dval = uint8_t(t % q);
      t /= q;
      if (dval) {
        digits[u] = dval;
        raw.add_scaled(word, u, 0, dval);
      }
    }
    for (uint64_t sub = start; sub < stop; ++sub) {
      uint32_t rk = raw.rank_of(word);
      res.min_rank = std::min(res.min_rank, rk);
      if (want_hist) res.hist[rk]++;
      if (sub + 1 == stop) break;
      // odometer increment over digits above L
      for (uint32_t u = L + 1; u < dim; ++u) {
        uint8_t old = digits[u];
        uint8_t next = uint8_t((old + 1) % q);
        digits[u] = next;
        raw.add_scaled(word, u, old, next);
        if (next != 0) break;
      }
    }
    pos += block[L];
    if (pos >= hi) break;
  }
  return res;
}

}  // namespace

DistanceReport min_rank_distance(const Code& code, uint64_t budget, uint32_t jobs,
                                 bool histogram) {
  auto t0 = std::chrono::steady_clock::now();
  DistanceReport rep;
  const SpaceParams& prm = code.model->params();
  if (code.dim() == 0) {
    rep.degenerate = true;
    rep.size = 1;
    return rep;
  }
  uint64_t size = pow_u64(prm.q, code.dim());
  require(size <= budget, errc::budget_exceeded,
          "codeword count " + std::to_string(size) + " exceeds the enumeration budget");
  rep.size = size;

  RawScan raw(code);
  const uint64_t reps = (size - 1) / (prm.q - 1);
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = uint32_t(std::min<uint64_t>(jobs, reps));

  std::vector<ChunkResult> results(jobs);
  if (jobs <= 1) {
    results[0] = scan_range(raw, 0, reps, histogram);
  } else {
    std::vector<std::thread> pool;
    uint64_t chunk = (reps + jobs - 1) / jobs;
    for (uint32_t j = 0; j < jobs; ++j) {
      uint64_t lo = uint64_t(j) * chunk, hi = std::min(reps, lo + chunk);
      pool.emplace_back([&, j, lo, hi] { results[j] = scan_range(raw, lo, hi, histogram); });
    }
    for (auto& th : pool) th.join();
  }
  uint32_t min_rank = UINT32_MAX;
  for (const auto& r : results) min_rank = std::min(min_rank, r.min_rank);
  rep.min_distance = min_rank;
  if (histogram) {
    rep.histogram[0] = 1;  // the zero word
    for (const auto& r : results)
      for (auto [rk, cnt] : r.hist) rep.histogram[rk] += cnt * (prm.q - 1);
  }
  // Singleton: |X| <= q^(n(m-s+1)); equality detected on exponents.
  uint64_t singleton_exp = uint64_t(prm.n) * (prm.m - min_rank + 1);
  rep.is_mrd = uint64_t(code.dim()) == singleton_exp;
  // q^singleton_exp when it fits, saturated otherwise
  unsigned __int128 rhs = 1;
  bool fits = true;
  for (uint64_t i = 0; i < singleton_exp && fits; ++i) {
    rhs *= prm.q;
    if (rhs > (unsigned __int128)UINT64_MAX) fits = false;
  }
  rep.singleton_rhs = fits ? uint64_t(rhs) : UINT64_MAX;
  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

DistanceReport verify_mrd(const Code& code, uint64_t budget, uint32_t jobs) {
  return min_rank_distance(code, budget, jobs, false);
}

}  // namespace rankforge
