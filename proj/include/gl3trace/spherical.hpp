#pragma once

#include <string>
#include <vector>

#include "gl3trace/halfspace.hpp"
#include "gl3trace/rational.hpp"

namespace gl3trace {

// A K-bi-invariant test function on G, stored as one rational per K-orbit
// of the half-space (f(g) only depends on the orbit of g . p0).
struct SphericalFn {
  std::vector<Rat> values;

  const Rat& eval_point(const HalfSpace& h, uint64_t point) const {
    return values[h.orbit_of_point(point)];
  }
  const Rat& eval_orbit(uint32_t orbit) const { return values[orbit]; }
  const Rat& eval_mat(const HalfSpace& h, const Mat3& g) const {
    return eval_point(h, h.act(g, h.p0));
  }

  static SphericalFn constant(const HalfSpace& h, const Rat& c);
  // indicator of the base-point orbit {p0}
  static SphericalFn delta_p0(const HalfSpace& h);
  static SphericalFn delta_orbit(const HalfSpace& h, uint32_t orbit);
  // deterministic small rationals (numerators -9..9, denominators 1..5)
  static SphericalFn random(const HalfSpace& h, uint64_t seed);
  // text table: lines "<orbit_index> <rational>"; unlisted orbits are 0;
  // '#' starts a comment
  static SphericalFn from_table(const HalfSpace& h, const std::string& text);
};

// Conjugacy class of kappa inside GL2(F_q), as matrix codes.  Membership is
// decided by the characteristic polynomial plus, for repeated eigenvalues,
// whether the matrix is scalar.  SingularKappaError if kappa is singular.
std::vector<Mat2> gl2_class_elements(const Field& fq, const Mat2& kappa);

// Oracle for the same set: BFS conjugation closure g kappa g^-1.
std::vector<Mat2> gl2_class_elements_bfs(const Field& fq, const Mat2& kappa);

// Horocycle transform: Hf(kappa) = sum over xi in the GL2-class of kappa
// and (x, y) in F_q^2 of f([[xi, (x,y)^T], [0, 1]]).
Rat horocycle_transform(const HalfSpace& h, const SphericalFn& f, const Mat2& kappa);

}  // namespace gl3trace
