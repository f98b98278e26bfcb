#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gl3trace/matrix.hpp"
#include "gl3trace/rational.hpp"

namespace gl3trace {

// Conjugacy class kinds of GL3(F_q), by eigenvalue structure:
//   Central        aI
//   Hyp1           diag(a, a, b), a != b, semisimple
//   Hyp2           diag(a, b, c), pairwise distinct
//   Par1           eigenvalue a, Jordan blocks (2, 1)
//   Par2           eigenvalue a, one Jordan block of size 3
//   Par3           Jordan block J2(a) plus eigenvalue b != a
//   EllQuadScalar  irreducible quadratic eigenvalue pair {eta, eta^q} plus
//                  a rational eigenvalue e
//   EllCubic       irreducible cubic eigenvalue orbit {xi, xi^q, xi^(q^2)}
enum class ClassKind {
  Central,
  Hyp1,
  Hyp2,
  Par1,
  Par2,
  Par3,
  EllQuadScalar,
  EllCubic,
};

const char* class_kind_name(ClassKind k);

struct ClassDescriptor {
  ClassKind kind;
  // Field codes; meaning by kind:
  //   Central/Par1/Par2: {a}
  //   Hyp1/Par3: {a, b} (a the repeated / Jordan eigenvalue)
  //   Hyp2: {a, b, c} ascending codes
  //   EllQuadScalar: {eta, e} with eta the minimal code in its Galois orbit
  //                  (an F_q2 code), e the rational eigenvalue
  //   EllCubic: {xi} minimal in its orbit (an F_q3 code)
  std::vector<uint64_t> params;
  Mat3 rep;  // representative over F_q
  BigInt centralizer_order;
  BigInt size;  // |GL3| / centralizer_order

  std::string label(const Field& f) const;  // stable human-readable tag
};

// The full set of conjugacy classes plus O(1) classification tables.
// Classification: the characteristic polynomial pins the class except for
// repeated eigenvalues, where rank(M - aI) for the repeated root a separates
// the Jordan types.
struct ConjClasses {
  uint64_t q = 0;
  std::vector<ClassDescriptor> classes;

  // indexed by charpoly_key; -1 means consult by_rank, -2 means singular
  std::vector<int32_t> unique_id;
  std::vector<std::array<int32_t, 3>> by_rank;  // [rank(M - aI)] -> id
  std::vector<uint32_t> multi_root;             // the repeated root a

  int32_t classify(const Field& f, const Mat3& m) const;

  // fq2 and fq3 supply eigenvalue codes for the elliptic kinds; they must
  // extend the same F_q (fq3 is the cubic tower level, fq2 an auxiliary
  // quadratic extension built by the caller or build()).
  static ConjClasses build(const Field& fq, const Field& fq2, const Field& fq3);
};

// Quadratic extension by the canonical irreducible polynomial, used for
// EllQuadScalar eigenvalue bookkeeping.
Field build_quadratic_extension(const Field& fq);

// Brute-force conjugation orbit of m under the group generated by gens
// (BFS on g m g^-1); returns the set of matrix codes.  Oracle for class
// sizes; BudgetExceededError past the cap.
std::vector<uint64_t> conjugation_orbit(const Field& f, const Mat3& m,
                                        uint64_t budget = 30000000);

// Brute-force centralizer order of m: scans all invertible matrices.
// Only feasible for small q (q^9 codes); BudgetExceededError otherwise.
BigInt centralizer_order_scan(const Field& f, const Mat3& m);

// Basis of the commutant {X : mX = Xm} inside all 3x3 matrices, from the
// nullspace of the 9x9 commutator system.  Deterministic (free variables in
// ascending vectorization order).
std::vector<Mat3> commutant_basis(const Field& f, const Mat3& m);

// Every invertible element of the commutant, i.e. the full centralizer of m
// in GL3(F_q): spans the commutant basis and filters by determinant.
// q^dim span elements; BudgetExceededError past the cap.
std::vector<Mat3> centralizer_elements(const Field& f, const Mat3& m,
                                       uint64_t budget = 20000000);

}  // namespace gl3trace
