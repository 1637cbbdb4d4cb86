#ifndef RANKFORGE_FIELD_HPP
#define RANKFORGE_FIELD_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rankforge/errors.hpp"

namespace rankforge {

// A field element. Either the distinguished zero, or the discrete log of the
// element with respect to the field generator. Elements carry no field handle;
// mixing elements of different fields is the caller's bug.
struct FEl {
  static constexpr uint32_t kZero = 0xFFFFFFFFu;
  uint32_t v = kZero;

  bool is_zero() const { return v == kZero; }
  friend bool operator==(const FEl&, const FEl&) = default;
};

struct FieldSpec {
  uint32_t p = 2;
  uint32_t E = 1;
  std::vector<uint32_t> modulus;  // little-endian, monic, length E+1
};

// F_{p^E} with Zech-logarithm tables. All subfields live inside it as
// Frobenius fixed-point sets; there is no cross-field coercion anywhere.
// Immutable after construction and safe for concurrent reads.
class Field {
 public:
  static constexpr uint64_t kTableBudget = uint64_t(1) << 22;

  static Field make(uint32_t p, uint32_t E);
  static Field make(uint32_t p, uint32_t E, const std::vector<uint32_t>& modulus);

  const FieldSpec& spec() const { return spec_; }
  uint32_t p() const { return spec_.p; }
  uint32_t degree() const { return spec_.E; }
  uint64_t order() const { return order_; }          // p^E
  uint64_t group_order() const { return gorder_; }   // p^E - 1

  FEl zero() const { return FEl{}; }
  FEl one() const { return FEl{0}; }
  FEl gen() const;  // the root of the modulus; primitive by construction

  FEl add(FEl a, FEl b) const;
  FEl sub(FEl a, FEl b) const { return add(a, neg(b)); }
  FEl neg(FEl a) const;
  FEl mul(FEl a, FEl b) const;
  FEl inv(FEl a) const;
  FEl div(FEl a, FEl b) const { return mul(a, inv(b)); }
  FEl pow(FEl a, int64_t e) const;

  // x^(p^e) for any integer e (reduced mod the Frobenius order E).
  FEl frob_p(FEl a, int64_t e) const;
  // x^(q^j) where q = p^c; negative j is the inverse Frobenius.
  FEl frob(FEl a, uint64_t q, int64_t j) const;

  // Relative trace/norm from F_{q^D} onto F_q; x must lie in F_{q^D}.
  FEl trace(FEl x, uint64_t q, uint32_t D) const;
  FEl norm(FEl x, uint64_t q, uint32_t D) const;

  // Canonical primitive element of F_{q^M}: gen()^((p^E-1)/(q^M-1)).
  FEl subfield_primitive(uint64_t q, uint32_t M) const;
  bool in_subfield(FEl x, uint64_t q, uint32_t M) const;
  // All q^M elements of F_{q^M}, in the canonical digit order.
  std::vector<FEl> subfield_elements(uint64_t q, uint32_t M = 1) const;

  // All x in F_{q^n}^* with x^N = c; size is 0 or gcd(q^n-1, N mod (q^n-1)).
  // One discrete-log division plus coset enumeration; no field scan.
  std::vector<FEl> solve_power_equation(uint64_t q, uint32_t n, int64_t N, FEl c) const;

  // Coordinates of x over F_q in the given basis, and the inverse map.
  std::vector<FEl> coords(FEl x, std::span<const FEl> basis, uint64_t q) const;
  FEl uncoords(std::span<const FEl> coeffs, std::span<const FEl> basis) const;

  // Canonical serialization: sum of polynomial coordinates c_i p^i. Depends
  // only on the modulus, never on the generator's log representation.
  uint64_t to_int(FEl a) const;
  FEl from_int(uint64_t v) const;

  // Multiplicative order (0 for the zero element).
  uint64_t element_order(FEl a) const;

  // Arithmetic tables over a small subfield, indexed by the canonical
  // subfield element order. Used by the raw scan paths.
  struct SmallTables {
    uint64_t q = 0;
    std::vector<uint8_t> add;  // q*q
    std::vector<uint8_t> mul;  // q*q
    std::vector<uint8_t> neg;  // q
    std::vector<FEl> elems;    // index -> element
    uint8_t at_add(uint8_t a, uint8_t b) const { return add[size_t(a) * q + b]; }
    uint8_t at_mul(uint8_t a, uint8_t b) const { return mul[size_t(a) * q + b]; }
  };
  SmallTables small_tables(uint64_t q) const;
  // Index of x in the canonical order of F_q (throws if x is outside F_q).
  uint8_t small_index(FEl x, uint64_t q) const;

 private:
  Field() = default;
  void build_tables();
  // p-adic digit count c with q = p^c; throws bad_parameters otherwise.
  uint32_t q_exponent(uint64_t q) const;
  void check_subfield(uint64_t q, uint32_t D, errc code) const;

  FieldSpec spec_;
  uint64_t order_ = 0;
  uint64_t gorder_ = 0;
  std::vector<uint32_t> exp_;   // log -> canonical int
  std::vector<uint32_t> log_;   // canonical int -> log
  std::vector<uint32_t> zech_;  // zech_[i] = log(1 + g^i), sentinel if zero
};

// Shared integer utilities.
bool is_prime_u64(uint64_t x);
std::vector<uint64_t> prime_factors(uint64_t x);  // distinct primes
uint64_t pow_u64(uint64_t b, uint32_t e);         // checked against overflow
uint64_t powmod_u64(uint64_t b, uint64_t e, uint64_t m);
int64_t mod_inverse(int64_t a, int64_t m);
uint64_t gcd_u64(uint64_t a, uint64_t b);

}  // namespace rankforge

#endif
