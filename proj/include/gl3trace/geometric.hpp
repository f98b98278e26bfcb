#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gl3trace/classes.hpp"
#include "gl3trace/halfspace.hpp"
#include "gl3trace/spherical.hpp"

namespace gl3trace {

// One pass over all q^9 matrix codes: every invertible matrix is classified
// and the K-orbit of its image of the base point tallied.
// hist[class][orbit] = #{g in class : g p0 in orbit}.  The pass doubles as a
// census: per-class totals must equal the closed class sizes or build()
// throws.  The orbital sum of any spherical f over a class falls out as
// sum_o hist[class][o] f(o).
struct GroupScan {
  std::vector<std::vector<uint32_t>> hist;

  Rat orbital_sum(const SphericalFn& f, int32_t class_id) const;
  BigInt class_total(int32_t class_id) const;
  static GroupScan build(const HalfSpace& h, const ConjClasses& cc,
                         uint64_t budget = 130000000);
};

// The same per-orbit tallies for a single conjugacy class, produced the
// independent way: generator-closure expansion of the class, then projection
// to K-orbits.  Reusable across test functions.
struct OrbitProjection {
  std::vector<uint32_t> counts;
  uint64_t class_size = 0;

  Rat sum(const SphericalFn& f) const;
  static OrbitProjection build(const HalfSpace& h, const Mat3& gamma,
                               uint64_t budget = 30000000);
};

// I_G(f, gamma): the sum of f over the conjugacy class of gamma, by
// generator closure.  Equals the stabilizer-coset sum because distinct
// cosets biject with distinct conjugates.
Rat orbital_sum_oracle(const HalfSpace& h, const SphericalFn& f,
                       const Mat3& gamma, uint64_t budget = 30000000);

// The same quantity enumerated without generator closure: scan the whole
// group, deduplicate the conjugates g^-1 gamma g, sum f over the survivors.
// Exercises the coset-to-conjugate correspondence by a disjoint route;
// only feasible at census scale (q^9 scan).
Rat orbital_sum_via_cosets(const HalfSpace& h, const SphericalFn& f,
                           const Mat3& gamma, uint64_t budget = 130000000);

// Right cosets of the subgroup of matrices with entries in the prime-power
// subfield of order p (the trace formula's discrete subgroup).  Scanning
// codes in ascending order, each unabsorbed invertible code is the minimal
// representative of a fresh coset; its whole coset is then marked.  When
// p = q the subgroup is the full group and the single representative is the
// identity (subgroup elements are not materialized in that case).
struct CosetSpace {
  bool full_group = false;
  std::vector<Mat3> reps;
  std::vector<Mat3> rep_inv;
  std::vector<Mat3> subgroup;  // all invertible matrices with entries < p

  static CosetSpace build(const HalfSpace& h, uint64_t p,
                          uint64_t budget = 200000000);
};

// The direct trace sum_{x in cosets} sum_{gamma in subgroup}
// f(x^-1 gamma x . p0), cached as per-orbit landing counts so repeated test
// functions cost one dot product.  The count total must be the subgroup
// order times the coset count, i.e. the full group order.
struct DirectTrace {
  std::vector<uint64_t> orbit_counts;

  Rat eval(const SphericalFn& f) const;
  static DirectTrace build(const HalfSpace& h, const CosetSpace& cs,
                           uint64_t budget = 200000000);
};

// ---- closed orbital sums ----

// (q^2 + q + 1) Hf(diag(a/c, b/c)): the split-torus orbital engine shared by
// the three-distinct-eigenvalue kind and both split elliptic branches (whose
// printed forms are this shape evaluated at Galois-conjugate triples).
Rat split_torus_orbital(const HalfSpace& h, const SphericalFn& f, uint64_t a,
                        uint64_t b, uint64_t c);

struct ClosedOrbital {
  Rat value;
  // summands whose printed matrix maps the base point outside the
  // half-space (possible only for the irreducible-cubic entry formula)
  uint64_t undefined_terms = 0;
  // every 2x2 argument handed to the horocycle transform (empty for the
  // point-listing and entry-formula kinds, which bypass it)
  std::vector<Mat2> hf_inputs;
};

// The per-kind printed closed forms, evaluated verbatim.  The
// irreducible-quadratic kind follows the odd-level branch (WrongBranchError
// when the tower level is even; the even-level branch is
// orbital_sum_split_quad below, a statement about subgroup-level elements
// that split).  The irreducible-cubic kind evaluates the printed
// nine-entry sextuple sum exactly as written, tallying undefined summands
// instead of failing.
ClosedOrbital orbital_sum_closed(const HalfSpace& h, const SphericalFn& f,
                                 const ClassDescriptor& d);

// Corrected reference for the irreducible-cubic kind: the same sextuple
// index set, but each summand evaluated by honest matrix conjugation
// y^-1 gamma y of the regular-representation form of the eigenvalue.
Rat orbital_sum_cubic_conjugation(const HalfSpace& h, const SphericalFn& f,
                                  uint64_t xi);

// Split elliptic branches, taking subgroup-level eigenvalue data embedded in
// F_q.  Quadratic: eta in the order-p^2 subfield but outside the prime
// field, rational eigenvalue e in the prime field; requires an even tower
// level.  Cubic: xi in the order-p^3 subfield outside the prime field;
// requires the level divisible by three (never within enumeration budgets,
// so this path is exercised structurally: it is split_torus_orbital at the
// Galois-conjugate triple).  WrongBranchError on a level mismatch.
Rat orbital_sum_split_quad(const HalfSpace& h, const SphericalFn& f,
                           uint64_t eta, uint64_t e);
Rat orbital_sum_split_cubic(const HalfSpace& h, const SphericalFn& f,
                            uint64_t xi);

// The two printed chains for the total three-distinct-eigenvalue weight
// constant disagree; both are reproduced here verbatim next to the true
// weight |G_gamma| / |Gamma_gamma| = (q-1)^3 / (p-1)^3 for adjudication.
struct Hyp2TotalConstants {
  Rat main_text;  // per-class weight implied by the main-text chain
  Rat appendix;   // per-class weight implied by the appendix chain
  Rat weight;     // the true weight
};
Hyp2TotalConstants hyp2_total_constants(uint64_t p, unsigned n);

// ---- assembly ----

// Everything the pre-trace identity needs at one (p, n): both class systems,
// the scan, the coset transversal, the direct-trace cache, and per-subgroup-
// class conjugation projections with oracle-sourced weights.
struct TraceContext {
  Tower tower;
  HalfSpace h;
  Field fq2;
  ConjClasses cc_q;
  Field fp, fp2, fp3;
  ConjClasses cc_p;
  GroupScan scan;
  CosetSpace cosets;
  DirectTrace direct;

  // indexed by subgroup class id
  std::vector<int32_t> g_class_of;
  std::vector<OrbitProjection> projection;
  std::vector<BigInt> subgroup_class_size;  // closure-oracle sizes
  std::vector<Rat> weight;                  // |G_gamma| / |Gamma_gamma|

  static TraceContext build(uint64_t p, unsigned n,
                            const std::vector<uint64_t>* poly_override = nullptr,
                            const std::string& delta_rule = "first",
                            uint64_t budget = 200000000);
};

struct GeomRow {
  std::string gamma_label;  // subgroup-level class
  std::string g_label;      // its class in the big group
  ClassKind kind;           // big-group kind
  BigInt gamma_class_size;  // closure oracle
  BigInt g_class_size;      // scan oracle
  Rat weight;
  bool centralizers_match_closed;  // oracle orders vs closed-form orders
  Rat oracle;                      // closure-projection orbital sum
  Rat oracle_scan;                 // scan-histogram orbital sum
  bool has_closed = false;
  Rat closed;
  uint64_t closed_undefined_terms = 0;
  bool closed_matches = false;
};

struct GeometricSide {
  std::vector<GeomRow> rows;
  Rat oracle_total;      // sum weight * oracle
  Rat direct;            // direct-trace value
  bool identity_ok;      // oracle_total == direct
  bool oracles_agree;    // every row: closure sum == scan sum
  Rat closed_total;      // sum weight * closed over rows that have one
  bool closed_complete;  // every row had a closed form
};

GeometricSide geometric_side(const TraceContext& ctx, const SphericalFn& f);

}  // namespace gl3trace
