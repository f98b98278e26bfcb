#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gl3trace/errors.hpp"
#include "gl3trace/rational.hpp"

namespace gl3trace {

// A finite field in a tower, with deterministic structure constants.
//
// Elements are integer codes 0..q-1.  For an extension of a base field of
// order b by a monic irreducible of degree d, the element sum_i c_i t^i has
// code sum_i code(c_i) * b^i.  Consequences used throughout:
//   * codes < b are exactly the base-field elements (constant polynomials),
//   * the code order is lexicographic on coordinate vectors, least
//     significant coordinate first, which is the fixed enumeration order for
//     deterministic choices (generator, cube nonresidue, canonical reps).
//
// Multiplication uses discrete-log tables when q <= 2^20, addition uses a
// flat table when q <= 4096; otherwise arithmetic falls back to digit-wise /
// modular routines (large prime fields stay usable, enumeration-scale fields
// stay fast).
class Field {
 public:
  static Field prime_field(uint64_t p);
  // Extends by the code-order-smallest monic irreducible of degree deg.
  static Field extension(const Field& base, unsigned deg);
  // Extends by a caller-supplied monic polynomial (low-to-high coefficients,
  // length deg+1, leading coefficient 1).  ReduciblePolynomialError if it
  // has a nontrivial factor.
  static Field extension_with_poly(const Field& base,
                                   const std::vector<uint64_t>& monic_poly);

  uint64_t p() const { return p_; }
  uint64_t q() const { return q_; }
  unsigned n() const { return n_; }           // degree over the prime field
  unsigned ext_degree() const { return d_; }  // degree over base (1 if prime)
  const Field* base() const { return base_.get(); }
  uint64_t generator() const { return g_; }
  const std::vector<uint64_t>& poly() const { return poly_; }

  uint64_t add(uint64_t a, uint64_t b) const;
  uint64_t sub(uint64_t a, uint64_t b) const;
  uint64_t neg(uint64_t a) const;
  uint64_t mul(uint64_t a, uint64_t b) const;
  uint64_t inv(uint64_t a) const;
  uint64_t div(uint64_t a, uint64_t b) const;
  uint64_t pow(uint64_t a, uint64_t e) const;
  uint64_t pow_big(uint64_t a, const BigInt& e) const;

  uint64_t frob(uint64_t a) const;  // x -> x^p
  // Membership in the subfield of order p^k (k | n): fixed by Frobenius^k.
  bool in_subfield(uint64_t a, unsigned k) const;

  // Coordinates over the immediate base field, length ext_degree().
  std::vector<uint64_t> coords(uint64_t a) const;
  uint64_t from_coords(const std::vector<uint64_t>& c) const;

  // Zero-first-then-generator-exponent order, the canonical total order on
  // field elements: rank(0) = 0, rank(g^k) = 1 + k.
  uint64_t rank(uint64_t a) const;
  uint64_t log(uint64_t a) const;  // discrete log base generator, a != 0
  uint64_t exp(uint64_t k) const;

  bool tabled() const { return !exp_.empty(); }
  // Raw table access for hot loops (valid only when tabled()).
  const uint32_t* exp_table() const { return exp_.data(); }
  const uint32_t* log_table() const { return log_.data(); }
  const uint32_t* add_table() const { return add_.empty() ? nullptr : add_.data(); }

  // A default-constructed Field is an empty slot; assign a factory result
  // before use (Tower members start this way).
  Field() = default;

 private:
  void finish_init();
  uint64_t mul_generic(uint64_t a, uint64_t b) const;

  uint64_t p_ = 0, q_ = 0, g_ = 0;
  unsigned n_ = 1, d_ = 1;
  std::shared_ptr<const Field> base_;
  std::vector<uint64_t> poly_;
  std::vector<uint32_t> exp_, log_, add_, frob_;
};

// Returns the first cube nonresidue in code order 1, 2, 3, ...
// NotCongruent1Mod3Error unless q = 1 mod 3 (otherwise cubing is a bijection
// and no nonresidue exists).
uint64_t find_cube_nonresidue(const Field& f);
// Alternative deterministic rule: first nonresidue among g^0, g^1, g^2, ...
uint64_t find_cube_nonresidue_generator_order(const Field& f);

// F_p in F_q in F_q(delta^(1/3)), with the top level presented on the basis
// {1, t, t^2}, t^3 = delta.  Top-level code = a1 + a2*q + a3*q^2 for the
// element a1 + a2 t + a3 t^2, so top-level codes *are* coordinate triples.
struct Tower {
  Field fp;   // prime field
  Field fq;   // degree-n extension (the prime field itself when n = 1)
  Field fq3;  // cubic radical extension by t^3 = delta
  uint64_t p = 0, q = 0;
  unsigned n = 1;
  uint64_t delta = 0;

  // Tower-step Frobenius x -> x^q on the top level; has order 3.
  uint64_t frob_q(uint64_t a) const;

  static Tower build(uint64_t p, unsigned n,
                     const std::vector<uint64_t>* poly_override = nullptr,
                     const std::string& delta_rule = "first");
};

// Norm from e down to f: x^((|e|-1)/(|f|-1)).  f must appear in e's base
// chain (LevelMismatchError otherwise).  The result's code always lies in
// f's code range because subfield elements are constant polynomials.
uint64_t field_norm(const Field& e, uint64_t x, const Field& f);

// Multiplicative character of a cyclic group of order `modulus`, identified
// by its exponent: chi_e(g^j) = zeta^(e*j).
struct MultChar {
  BigInt modulus;   // q^k - 1
  BigInt exponent;  // mod modulus
};

// Is the restriction to the unique subgroup of order d trivial?
// NotASubgroupError unless d | modulus.  (Trivial iff d | exponent.)
bool char_restriction_trivial(const MultChar& c, const BigInt& subgroup_order);

// Exact character counts for the representation-family case splits; see
// README for the condition catalogue.  Closed-form divisor counting, valid
// for arbitrary (p, n); UnknownConditionError for unrecognized names.
BigInt count_chars(const std::string& condition, const BigInt& p, unsigned n);
// Brute-force validator: enumerates character exponents directly.
// BudgetExceededError when the relevant modulus is too large to enumerate.
BigInt count_chars_enum(const std::string& condition, const BigInt& p, unsigned n);

bool is_prime_u64(uint64_t m);
std::vector<uint64_t> prime_factors_u64(uint64_t m);

}  // namespace gl3trace
