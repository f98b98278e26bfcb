#pragma once

#include <cstdint>
#include <vector>

#include "gl3trace/classes.hpp"
#include "gl3trace/field.hpp"
#include "gl3trace/matrix.hpp"

namespace gl3trace {

// The finite upper half-space attached to the tower F_q(delta^(1/3)) / F_q:
// pairs (alpha, beta) of top-level elements, alpha = a1 + a2 t + a3 t^2 and
// beta = b1 + b2 t + b3 t^2, subject to a2 b3 - a3 b2 != 0.  GL3(F_q) acts by
// fractional-linear maps; the base point p0 = (t^2, t) has stabilizer K,
// the multiplicative group of the top level embedded by its regular
// representation.  |H_q| = (q^2 - 1)(q - 1) q^3 and H_q = G / K.
//
// Point code: alpha * q^3 + beta (top-level element codes).  The canonical
// order on points is lexicographic on (a1, a2, a3, b1, b2, b3) ranked
// zero-first-then-by-generator-exponent; K-orbit representatives are the
// rank-minimal orbit elements.
struct HalfSpace {
  Tower tower;
  uint64_t q = 0, q3 = 0;
  uint64_t p0 = 0;
  uint64_t num_points = 0;
  std::vector<uint32_t> point_index;  // code -> dense index, ~0u outside H_q
  std::vector<uint32_t> orbit_of;     // dense index -> K-orbit id
  std::vector<uint64_t> orbit_reps;   // orbit id -> canonical point code
  std::vector<uint32_t> orbit_sizes;  // orbit id -> size
  Mat3 k_gen;  // regular representation of a generator of the top level

  static HalfSpace build(const Tower& t, uint64_t budget = 100000000);

  uint64_t pack(uint64_t alpha, uint64_t beta) const { return alpha * q3 + beta; }
  uint64_t alpha_of(uint64_t point) const { return point / q3; }
  uint64_t beta_of(uint64_t point) const { return point % q3; }
  bool contains(uint64_t alpha, uint64_t beta) const;
  uint32_t index_of(uint64_t point) const;
  uint32_t orbit_of_point(uint64_t point) const { return orbit_of[index_of(point)]; }

  // g . (alpha, beta); g has F_q entries (valid top-level codes).  The
  // denominator cannot vanish on H_q because {1, alpha, beta} is linearly
  // independent over F_q there.
  uint64_t act(const Mat3& g, uint64_t point) const;

  // The affine transversal of G / K: affine_rep(P) . p0 = P, with
  // rows (a3, a2, a1), (b3, b2, b1), (0, 0, 1).
  Mat3 affine_rep(uint64_t point) const;

  // packed 6-bit coordinate ranks, lexicographic comparison key
  uint64_t rank_key(uint64_t point) const;

  // point built from six F_q coordinate codes ((a1,a2,a3),(b1,b2,b3))
  uint64_t from_coords(const std::array<uint64_t, 3>& a,
                       const std::array<uint64_t, 3>& b) const;
};

// Candidate fundamental domain for the centralizer of a class representative
// acting on the half-space: a parameterized point list meant to contain one
// point of every centralizer orbit.  The lists depend only on the kind (the
// centralizer shape is parameter-independent).  For the full-Jordan kind the
// list is the claimed upper-triangular-group domain, which is checked against
// the true centralizer by verify_fundamental_domain.  UnsupportedKindError
// for the irreducible-cubic kind, whose orbits are not free modulo scalars
// and admit no such listing.
std::vector<uint64_t> fundamental_domain(const HalfSpace& h, ClassKind kind);

struct DomainCheck {
  bool exact = false;     // disjoint and covering: one point per orbit
  bool disjoint = false;  // no two domain points in the same orbit
  uint64_t covered = 0;   // distinct points reached by the orbits
  uint64_t domain_size = 0;
};

// Orbits every domain point under the supplied group elements (the complete
// element list, typically centralizer_elements output) and reports whether
// the domain hits every orbit exactly once.
DomainCheck verify_fundamental_domain(const HalfSpace& h,
                                      const std::vector<uint64_t>& domain,
                                      const std::vector<Mat3>& group);

}  // namespace gl3trace
