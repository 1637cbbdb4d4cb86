#ifndef RANKFORGE_BILINEAR_HPP
#define RANKFORGE_BILINEAR_HPP

#include <optional>

#include "rankforge/circulant.hpp"

namespace rankforge {

// A bilinear form on the pair of k-cyclic models, held in either the standard
// matrix representation (m x n over F_q) or the circulant one. The two
// interconvert through nu with rank preserved.
struct Form {
  const CyclicModel* model = nullptr;
  std::optional<Mat> std_rep;
  std::optional<CircSpec> circ_rep;
};

Form form_from_std(const CyclicModel& model, Mat M);
Form form_from_circ(const CyclicModel& model, CircSpec spec);
const Mat& form_std(Form& f);
const CircSpec& form_circ(Form& f);
Mat form_std_copy(const Form& f);
CircSpec form_circ_copy(const Form& f);
bool form_equal(const Form& a, const Form& b);
Form form_add(const Form& a, const Form& b);

// The form with circulant generator zero except a at position j.
Form component_form(const CyclicModel& model, FEl a, uint32_t j);

// Evaluation on model points: x in F_{q^m}, x' in F_{q^n}; the value is the
// sum of Tr_{q^d/q}(c_j x x'^(q^(k j))) over the generator entries.
FEl eval_form(const Form& f, FEl x, FEl xp);

// Splits f into its e component forms; their sum recomposes f.
std::vector<Form> decompose(const Form& f);

// Basis of the left radical (rows, over F_q) together with the rank.
std::pair<Mat, uint32_t> radical_and_rank(const Form& f);

// A candidate automorphism: circulant generator pair, a power of the shift
// pair, a power of the generator-level Frobenius, and the optional transpose
// (square case only). The pair arrays parametrize the action exactly as the
// stabilizer equations are written: the expanded left array is the left factor
// and the transposed expanded right array is the right factor of the sandwich.
struct AutTriple {
  std::vector<FEl> left;   // length m, entries in F_{q^m}
  std::vector<FEl> right;  // length n, entries in F_{q^n}
  int64_t shift = 0;
  int64_t frob = 0;
  bool transpose = false;
};

AutTriple identity_triple(const CyclicModel& model);

// Combined generator-level exponent: the twist part of the triple acts on
// circulant generators entrywise as x -> x^(p^E) with E = frob + h*k*shift.
uint32_t combined_exponent(const CyclicModel& model, int64_t shift, int64_t frob);

// The same automorphism in the standard representation:
// M -> A^t M^(p^e) B, transposed last when flagged.
struct StandardTuple {
  Mat A, B;
  uint32_t e = 0;
  bool transpose = false;
};

StandardTuple triple_to_standard(const CyclicModel& model, const AutTriple& t);
Mat apply_standard(const CyclicModel& model, const StandardTuple& tup, const Mat& M);

// Canonical action on forms, computed in the standard representation.
Form apply_automorphism(const CyclicModel& model, const Form& f, const AutTriple& t);

// Generator-level action, used to cross-validate the canonical one.
CircSpec circ_action(const CyclicModel& model, const AutTriple& t, const CircSpec& spec);

// compose(t2, t1) acts as "t1 first, then t2".
AutTriple compose_triples(const CyclicModel& model, const AutTriple& t2, const AutTriple& t1);
AutTriple invert_triple(const CyclicModel& model, const AutTriple& t);

}  // namespace rankforge

#endif
