#ifndef RANKFORGE_ERRORS_HPP
#define RANKFORGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rankforge {

enum class errc {
  non_prime,
  not_irreducible,
  not_primitive,
  table_budget_exceeded,
  division_by_zero,
  not_in_subfield,
  no_such_subfield,
  zero_right_hand_side,
  not_a_basis,
  not_in_span,
  dimension_mismatch,
  singular,
  not_coprime,
  budget_exceeded,
  rank_deficient,
  not_circulant,
  not_divisor,
  entry_not_in_field,
  index_out_of_range,
  transpose_on_rectangular,
  bad_parameters,
  invalid_mu,
  not_independent,
  constraint_unsatisfiable,
  parse_error,
  unknown_key,
  io_error,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace rankforge

#endif
