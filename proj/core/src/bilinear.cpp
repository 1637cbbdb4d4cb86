#include "rankforge/bilinear.hpp"

namespace rankforge {

namespace {

void check_model(const Form& f, const CyclicModel& model) {
  require(f.model == &model, errc::dimension_mismatch, "form belongs to another model");
}

Mat entrywise_frob_p(const Field& f, const Mat& M, uint32_t e) { return mat_frob_p(M, e); }

}  // namespace

Form form_from_std(const CyclicModel& model, Mat M) {
  require(M.rows == model.params().m && M.cols == model.params().n, errc::dimension_mismatch,
          "form matrix shape");
  require(mat_in_subfield(M, model.params().q), errc::entry_not_in_field,
          "standard form entries must lie in F_q");
  Form f;
  f.model = &model;
  f.std_rep = std::move(M);
  return f;
}

Form form_from_circ(const CyclicModel& model, CircSpec spec) {
  require(spec.gen.size() == model.params().e, errc::dimension_mismatch, "generator length");
  for (FEl g : spec.gen)
    require(model.in_Fqd(g), errc::not_in_subfield, "generator entries must lie in F_{q^d}");
  spec.params = model.params();
  Form f;
  f.model = &model;
  f.circ_rep = std::move(spec);
  return f;
}

const Mat& form_std(Form& f) {
  if (!f.std_rep) f.std_rep = f.model->nu_inverse(*f.circ_rep);
  return *f.std_rep;
}

const CircSpec& form_circ(Form& f) {
  if (!f.circ_rep) f.circ_rep = f.model->nu_forward(*f.std_rep);
  return *f.circ_rep;
}

Mat form_std_copy(const Form& f) {
  if (f.std_rep) return *f.std_rep;
  return f.model->nu_inverse(*f.circ_rep);
}

CircSpec form_circ_copy(const Form& f) {
  if (f.circ_rep) return *f.circ_rep;
  return f.model->nu_forward(*f.std_rep);
}

bool form_equal(const Form& a, const Form& b) {
  require(a.model == b.model, errc::dimension_mismatch, "forms on different models");
  if (a.circ_rep && b.circ_rep) return a.circ_rep->gen == b.circ_rep->gen;
  return form_std_copy(a) == form_std_copy(b);
}

Form form_add(const Form& a, const Form& b) {
  require(a.model == b.model, errc::dimension_mismatch, "forms on different models");
  const CyclicModel& model = *a.model;
  if (a.circ_rep && b.circ_rep) {
    CircSpec s = *a.circ_rep;
    for (size_t i = 0; i < s.gen.size(); ++i)
      s.gen[i] = model.field().add(s.gen[i], b.circ_rep->gen[i]);
    return form_from_circ(model, std::move(s));
  }
  return form_from_std(model, mat_add(form_std_copy(a), form_std_copy(b)));
}

Form component_form(const CyclicModel& model, FEl a, uint32_t j) {
  require(j < model.params().e, errc::index_out_of_range,
          "component index must lie in [0, e)");
  CircSpec spec;
  spec.params = model.params();
  spec.gen.assign(model.params().e, FEl{});
  spec.gen[j] = a;
  return form_from_circ(model, std::move(spec));
}

FEl eval_form(const Form& f, FEl x, FEl xp) {
  const CyclicModel& model = *f.model;
  const Field& F = model.field();
  const SpaceParams& prm = model.params();
  require(F.in_subfield(x, prm.q, prm.m), errc::not_in_subfield, "x outside F_{q^m}");
  require(F.in_subfield(xp, prm.q, prm.n), errc::not_in_subfield, "x' outside F_{q^n}");
  CircSpec spec = form_circ_copy(f);
  FEl acc{};
  for (uint32_t j = 0; j < prm.e; ++j) {
    if (spec.gen[j].is_zero()) continue;
    FEl term = F.mul(spec.gen[j], F.mul(x, F.frob(xp, prm.q, int64_t(prm.k) * j)));
    acc = F.add(acc, F.trace(term, prm.q, prm.d));
  }
  return acc;
}

std::vector<Form> decompose(const Form& f) {
  const CyclicModel& model = *f.model;
  CircSpec spec = form_circ_copy(f);
  std::vector<Form> out;
  out.reserve(spec.gen.size());
  for (uint32_t j = 0; j < spec.gen.size(); ++j)
    out.push_back(component_form(model, spec.gen[j], j));
  return out;
}

std::pair<Mat, uint32_t> radical_and_rank(const Form& f) {
  Mat M = form_std_copy(f);
  Mat rad = left_null_space(M);
  return {rad, uint32_t(M.rows - rad.rows)};
}

AutTriple identity_triple(const CyclicModel& model) {
  AutTriple t;
  t.left.assign(model.params().m, FEl{});
  t.right.assign(model.params().n, FEl{});
  t.left[0] = model.field().one();
  t.right[0] = model.field().one();
  return t;
}

uint32_t combined_exponent(const CyclicModel& model, int64_t shift, int64_t frob) {
  const SpaceParams& prm = model.params();
  int64_t period = int64_t(prm.h) * prm.d;
  int64_t e = frob % period + int64_t(prm.h) * prm.k % period * (shift % period) % period;
  e = ((e % period) + period) % period;
  return uint32_t(e);
}

namespace {

void validate_triple(const CyclicModel& model, const AutTriple& t) {
  const SpaceParams& prm = model.params();
  const Field& F = model.field();
  require(t.left.size() == prm.m && t.right.size() == prm.n, errc::bad_parameters,
          "triple array lengths must be (m, n)");
  for (FEl a : t.left)
    require(F.in_subfield(a, prm.q, prm.m), errc::not_in_subfield, "left entries in F_{q^m}");
  for (FEl b : t.right)
    require(F.in_subfield(b, prm.q, prm.n), errc::not_in_subfield, "right entries in F_{q^n}");
  if (t.transpose)
    require(prm.m == prm.n, errc::transpose_on_rectangular, "transpose needs m = n");
}

Mat frob_entrywise(const Field& F, const Mat& M, uint32_t e) { return mat_frob_p(M, e); }

}  // namespace

StandardTuple triple_to_standard(const CyclicModel& model, const AutTriple& t) {
  validate_triple(model, t);
  const SpaceParams& prm = model.params();
  const Field& F = model.field();
  const uint32_t Ec = combined_exponent(model, t.shift, t.frob);

  Mat DA = expand_square(F, prm.q, t.left, prm.k);
  Mat DB = expand_square(F, prm.q, t.right, prm.k);
  require(mat_rank(DA) == prm.m, errc::bad_parameters, "left circulant is singular");
  require(mat_rank(DB) == prm.n, errc::bad_parameters, "right circulant is singular");

  StandardTuple tup;
  tup.e = uint32_t(Ec % prm.h);
  tup.transpose = t.transpose;
  tup.A = mat_mul(mat_mul(frob_entrywise(F, model.Xm_inv(), Ec), mat_transpose(DA)), model.Xm());
  tup.B = mat_mul(mat_mul(frob_entrywise(F, model.Xn_inv(), Ec), mat_transpose(DB)), model.Xn());
  require(mat_in_subfield(tup.A, prm.q) && mat_in_subfield(tup.B, prm.q),
          errc::entry_not_in_field, "standard pair escaped F_q");
  return tup;
}

Mat apply_standard(const CyclicModel& model, const StandardTuple& tup, const Mat& M) {
  Mat out = mat_mul(mat_mul(mat_transpose(tup.A), entrywise_frob_p(model.field(), M, tup.e)),
                    tup.B);
  if (tup.transpose) out = mat_transpose(out);
  return out;
}

Form apply_automorphism(const CyclicModel& model, const Form& f, const AutTriple& t) {
  check_model(f, model);
  StandardTuple tup = triple_to_standard(model, t);
  return form_from_std(model, apply_standard(model, tup, form_std_copy(f)));
}

CircSpec circ_action(const CyclicModel& model, const AutTriple& t, const CircSpec& spec) {
  validate_triple(model, t);
  const SpaceParams& prm = model.params();
  const Field& F = model.field();
  const uint32_t Ec = combined_exponent(model, t.shift, t.frob);

  CircSpec twisted = spec;
  for (FEl& g : twisted.gen) g = F.frob_p(g, Ec);
  Mat D = model.expand(twisted);
  Mat DA = expand_square(F, prm.q, t.left, prm.k);
  Mat DBt = mat_transpose(expand_square(F, prm.q, t.right, prm.k));
  Mat out = mat_mul(mat_mul(DA, D), DBt);
  if (t.transpose) {
    require(prm.m == prm.n, errc::transpose_on_rectangular, "transpose needs m = n");
    out = mat_transpose(out);
  }
  CircSpec res;
  res.params = prm;
  res.gen.assign(out.a.begin(), out.a.begin() + prm.e);
  require(model.expand(res) == out, errc::not_circulant, "action left the circulant algebra");
  return res;
}

AutTriple compose_triples(const CyclicModel& model, const AutTriple& t2, const AutTriple& t1) {
  require(!t1.transpose && !t2.transpose, errc::bad_parameters,
          "composition is defined for non-transpose triples");
  const SpaceParams& prm = model.params();
  const Field& F = model.field();
  const uint32_t Ec2 = combined_exponent(model, t2.shift, t2.frob);

  std::vector<FEl> a1(t1.left), b1(t1.right);
  for (FEl& x : a1) x = F.frob_p(x, Ec2);
  for (FEl& x : b1) x = F.frob_p(x, Ec2);
  AutTriple out;
  out.left = twisted_convolution(F, prm.q, t2.left, a1, prm.k);
  out.right = twisted_convolution(F, prm.q, t2.right, b1, prm.k);
  out.shift = t1.shift + t2.shift;
  out.frob = t1.frob + t2.frob;
  return out;
}

AutTriple invert_triple(const CyclicModel& model, const AutTriple& t) {
  require(!t.transpose, errc::bad_parameters, "inversion is defined for non-transpose triples");
  const SpaceParams& prm = model.params();
  const Field& F = model.field();
  const uint32_t Ec = combined_exponent(model, t.shift, t.frob);
  const int64_t period = int64_t(prm.h) * prm.d;

  auto invert_side = [&](const std::vector<FEl>& gen) {
    Mat D = expand_square(F, prm.q, gen, prm.k);
    Mat Dinv = mat_inverse(D);
    std::vector<FEl> out(Dinv.a.begin(), Dinv.a.begin() + gen.size());
    require(expand_square(F, prm.q, out, prm.k) == Dinv, errc::not_circulant,
            "inverse left the circulant algebra");
    // conjugate past the inverted twist
    for (FEl& x : out) x = F.frob_p(x, -int64_t(Ec));
    return out;
  };
  AutTriple out;
  out.left = invert_side(t.left);
  out.right = invert_side(t.right);
  out.shift = ((-t.shift) % period + period) % period;
  out.frob = ((-t.frob) % period + period) % period;
  return out;
}

}  // namespace rankforge
