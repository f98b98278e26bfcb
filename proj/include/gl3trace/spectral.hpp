#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gl3trace/classes.hpp"
#include "gl3trace/field.hpp"
#include "gl3trace/geometric.hpp"
#include "gl3trace/halfspace.hpp"
#include "gl3trace/rational.hpp"

namespace gl3trace {

// Sizes of the seven non-central class kinds at a given field level, from
// the same centralizer orders the class builder uses.  At the subgroup
// level these are the constants the multiplicity closed forms are written
// in; at the ambient level they are the denominators of the induced
// character.
struct ClassSizeConstants {
  BigInt H1, H2, P1, P2, P3, E1, E2;

  static ClassSizeConstants at(const BigInt& q);
};

// Character of the permutation representation on cosets of the subgroup of
// matrices with entries below p, evaluated on an ambient class: the class
// meets the subgroup in at most one subgroup class (rational canonical form
// over the subfield decides which), and the value is
//   |G| * (mass of the intersection) / (|subgroup| * ambient class size).
// Split-semisimple classes need the eigenvalue multiset to be stable under
// x -> x^p: all eigenvalues in the subfield, or a fixed point plus a
// quadratic Galois pair, or a full cubic Galois orbit.  The elliptic kinds
// vanish identically when the tower degree shares the factor (2 or 3) that
// would split their eigenvalues.
Rat chi_rho(const Tower& t, const Field& fq2, const ClassDescriptor& d);

// Fixed-coset oracles behind chi_rho.  The subgroup variant counts coset
// representatives x with x^-1 g x back inside the subgroup; the stabilizer
// variant counts fixed points of g on the half-space, which is the coset
// space of K.  Both are plain fixed-point counts, so conjugation-invariant
// nonnegative integers.
BigInt induced_char_gamma_oracle(const HalfSpace& h, const CosetSpace& cs,
                                 const Mat3& g);
BigInt induced_char_k_oracle(const HalfSpace& h, const Mat3& g);

// Number of (subgroup, subgroup) double cosets: orbits of the right
// subgroup-translation action on the left coset space, found by generator
// closure over a global element -> coset index table.  Equals the sum of
// squared multiplicities of the induced representation.
BigInt gamma_double_coset_count(const HalfSpace& h, const CosetSpace& cs,
                                uint64_t budget = 1000000);

// Number of subgroup orbits on the half-space, i.e. (subgroup, K) double
// cosets.  Equals the inner product of the two induced characters.
BigInt gamma_orbit_count_on_halfspace(const HalfSpace& h);

// ---- multiplicities of the induced representation ----

// The eight families of irreducible representations, in character-table
// order: twists of the determinant, the two components of the
// one-parameter principal series, the two components of the two-parameter
// one, the full principal series, and the two cuspidal-type families
// induced from the quadratic and cubic tori.
enum class IrrepFamily {
  Alpha,
  PiAlpha,
  PiAlphaPrime,
  PiAb,
  PiAbPrime,
  PiAbc,
  RhoANu,
  SigmaMu,
};

std::string irrep_family_name(IrrepFamily fam);
BigInt irrep_dimension(IrrepFamily fam, const BigInt& q);

// Number of distinct irreducibles in the family over the full dual.
// Summing count * dim^2 over all eight families must give |G|, and summing
// the counts must give the class number q^3 - q.
BigInt irrep_family_total(IrrepFamily fam, const BigInt& p, unsigned n);

// The multiplicity closed forms split each family into restriction cases;
// case 0 is always the vanishing one (the determinant-central condition
// fails).  Counts come from the character-counting kernels and partition
// the family total.
unsigned family_case_count(IrrepFamily fam);
std::string irrep_case_condition(IrrepFamily fam, unsigned case_id);
BigInt irrep_case_count(IrrepFamily fam, unsigned case_id, const BigInt& p,
                        unsigned n);

// The printed closed form for the multiplicity of a family member in the
// given restriction case, over the common denominator
// p^3 (p-1)^2 (p+1) (p^2+p+1).  Only the regime gcd(n, 6) = 1 is covered;
// other tower degrees raise UnsupportedRegimeError.
Rat multiplicity(IrrepFamily fam, unsigned case_id, const BigInt& p,
                 unsigned n);

struct MultiplicityRow {
  IrrepFamily family;
  unsigned case_id = 0;
  std::string condition;
  BigInt count;
  BigInt dimension;
  Rat m;
  bool is_integer = false;
  bool is_nonnegative = false;
};

// Every family/case with its count, dimension and exact multiplicity.
// Integrality and nonnegativity are recorded per row; the summary flag
// quantifies only over populated rows (count > 0), since a case no
// character satisfies asserts nothing.
struct MultiplicityReport {
  BigInt p, q;
  unsigned n = 0;
  std::vector<MultiplicityRow> rows;
  bool all_populated_integral = true;
};

MultiplicityReport multiplicity_report(const BigInt& p, unsigned n);

// Global consistency checks on the decomposition data.
//   dual:  sum of count * dim^2 over the full dual = |G|, and the number of
//          irreducibles = q^3 - q (any tower degree);
//   index: sum of count * m * dim = [G : subgroup] (the dimension of the
//          induced representation; needs the multiplicity regime);
//   pairs: sum of count * m^2, to compare against the double-coset oracle.
struct SpectralChecksums {
  BigInt p, q;
  unsigned n = 0;
  BigInt dual_size, class_number;
  BigInt sum_count_dim2, group_order;
  bool dual_ok = false;
  bool regime_supported = false;
  Rat sum_m_dim;
  BigInt index;
  bool index_ok = false;
  Rat sum_m_sq;
};

SpectralChecksums spectral_checksums(const BigInt& p, unsigned n);

// ---- the two worked identities ----

// Constant test function: the direct trace collapses to |G| on the nose.
struct ConstantFunctionIdentity {
  Rat direct_total;
  BigInt group_order;
  bool matches = false;
};

ConstantFunctionIdentity constant_function_identity(const TraceContext& ctx);

// Point mass at the base point: the direct trace divided by |K| equals the
// number of subgroup orbits on the half-space (an integer).  The printed
// closed form for this count is evaluated alongside: a main term, plus a
// second term when the tower degree is coprime to 3.  Agreement is
// recorded, not assumed.
struct BasePointMassIdentity {
  Rat oracle;
  bool oracle_integral = false;
  BigInt gamma_orbits;
  bool orbit_count_matches = false;
  Rat printed_main;
  Rat printed_extra;
  Rat printed_total;
  bool printed_matches = false;
};

BasePointMassIdentity base_point_mass_identity(const TraceContext& ctx);

}  // namespace gl3trace
