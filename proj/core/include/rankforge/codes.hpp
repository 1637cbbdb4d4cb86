#ifndef RANKFORGE_CODES_HPP
#define RANKFORGE_CODES_HPP

#include <map>

#include "rankforge/bilinear.hpp"

namespace rankforge {

enum class CodeKind { Phi, TwistedSquare, TwistedPunctured, GabidulinEval, PuncturedBy };

const char* code_kind_name(CodeKind k);

// An F_q-linear rank-metric code given by its generator basis of m x n
// standard matrices. Circulant-structured kinds also carry the generator
// arrays, which the automorphism machinery works on.
struct Code {
  const CyclicModel* model = nullptr;
  CodeKind kind = CodeKind::Phi;
  uint32_t t = 0;
  FEl mu{};
  uint32_t s = 0;
  std::vector<FEl> gpoints;                     // GabidulinEval only
  std::vector<Mat> gens;                        // nt generators, independent
  std::vector<std::vector<FEl>> gens_circ;      // generator arrays, when structured

  uint32_t dim() const { return uint32_t(gens.size()); }
  uint64_t size() const;  // q^dim
};

constexpr uint64_t kDefaultWordBudget = uint64_t(1) << 26;

// Phi_{m,n,t}: the first t components, a generalized Gabidulin code.
Code build_phi(const CyclicModel& model, uint32_t t);

// Twisted code: Gamma (+ components 1..t-1 when t > 1). Square when m = n,
// punctured otherwise. Requires N_{q^n/q}(mu) != (-1)^(nt).
Code build_twisted(const CyclicModel& model, uint32_t t, FEl mu, uint32_t s);

// Evaluation code of the q^k-polynomials of q^k-degree < t at the given
// F_q-independent points of F_{q^n}; coordinates are the trace-dual ones.
Code gabidulin_eval(const CyclicModel& model, const std::vector<FEl>& gpoints, uint32_t t);

// Punctures a square code by an arbitrary full-rank A over F_q (standard
// level). The target model must share the code model's field.
Code puncture_code(const CyclicModel& target, const Code& code, const Mat& A);

// Punctures by the canonical block matrix (I_m | ... | I_m) at the generator
// level; requires a circulant-structured code.
Code puncture_code_block(const CyclicModel& target, const Code& code);

// Membership structure: reduced row echelon form of the flattened generators.
class CodeIndex {
 public:
  explicit CodeIndex(const Code& code);
  bool member(const Mat& M) const;
  bool member_form(const Form& f) const;

 private:
  const Field* f_;
  uint32_t cols_;
  std::vector<std::vector<FEl>> rows_;
  std::vector<uint32_t> pivots_;
};

// Two linear codes are equal iff dimensions match and generators embed both
// ways; no enumeration involved.
bool code_equal(const Code& a, const Code& b);

// Codeword for a coefficient index written base q over the generators.
Mat word_at(const Code& code, uint64_t idx);

struct DistanceReport {
  uint64_t size = 0;
  uint32_t min_distance = 0;
  uint64_t singleton_rhs = 0;
  bool is_mrd = false;
  bool degenerate = false;  // dimension zero: distance undefined
  std::map<uint32_t, uint64_t> histogram;  // rank -> word count (all words)
  double elapsed_ms = 0.0;
};

// Exhaustive minimum rank distance over all nonzero codewords. Scalar classes
// are collapsed (ranks are invariant under F_q^x scaling). The scan is
// chunked deterministically; results do not depend on the chunking.
DistanceReport min_rank_distance(const Code& code, uint64_t budget = kDefaultWordBudget,
                                 uint32_t jobs = 0, bool histogram = false);

DistanceReport verify_mrd(const Code& code, uint64_t budget = kDefaultWordBudget,
                          uint32_t jobs = 0);

}  // namespace rankforge

#endif
