#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gl3trace/field.hpp"

namespace gl3trace {

// Plain-data 3x3 matrix; entries are field codes, row-major.  All operations
// take the field explicitly, so matrices can move between contexts (e.g. a
// matrix over F_q reused over F_q^3, valid because subfield codes coincide).
struct Mat3 {
  std::array<uint64_t, 9> e{};

  uint64_t& at(int r, int c) { return e[3 * r + c]; }
  uint64_t at(int r, int c) const { return e[3 * r + c]; }
  bool operator==(const Mat3&) const = default;
};

struct Mat2 {
  std::array<uint64_t, 4> e{};

  uint64_t& at(int r, int c) { return e[2 * r + c]; }
  uint64_t at(int r, int c) const { return e[2 * r + c]; }
  bool operator==(const Mat2&) const = default;
};

Mat3 mat3_identity();
Mat3 mat3_scalar(uint64_t s);
Mat3 mat3_diag(uint64_t a, uint64_t b, uint64_t c);
Mat3 mmul(const Field& f, const Mat3& a, const Mat3& b);
std::array<uint64_t, 3> mat_vec(const Field& f, const Mat3& m,
                                const std::array<uint64_t, 3>& v);
uint64_t det(const Field& f, const Mat3& m);
// Adjugate over determinant; SingularError when det vanishes.
Mat3 inv(const Field& f, const Mat3& m);
Mat3 transpose(const Mat3& m);
Mat3 scalar_mul(const Field& f, uint64_t s, const Mat3& m);

// det(xI - A) = x^3 - trace x^2 + minor_sum x - det
struct CharPoly3 {
  uint64_t det, minor_sum, trace;
  bool operator==(const CharPoly3&) const = default;
};
CharPoly3 charpoly(const Field& f, const Mat3& m);
// Packed key for table lookups, < q^3.
uint64_t charpoly_key(const Field& f, const CharPoly3& c);

unsigned mat_rank(const Field& f, Mat3 m);

// Row-major base-q code, entry (0,0) least significant; < q^9.
uint64_t mat3_code(const Field& f, const Mat3& m);
Mat3 mat3_from_code(const Field& f, uint64_t code);

Mat2 mat2_identity();
Mat2 mmul2(const Field& f, const Mat2& a, const Mat2& b);
uint64_t det2(const Field& f, const Mat2& m);
Mat2 inv2(const Field& f, const Mat2& m);
// det(xI - A) = x^2 - trace x + det
struct CharPoly2 {
  uint64_t det, trace;
  bool operator==(const CharPoly2&) const = default;
};
CharPoly2 charpoly2(const Field& f, const Mat2& m);
uint64_t mat2_code(const Field& f, const Mat2& m);
Mat2 mat2_from_code(const Field& f, uint64_t code);

// Three matrices generating all of GL3(F_q): a 3-cycle permutation, the
// transvection I + E_12, and diag(g, 1, 1) for the canonical generator g.
std::vector<Mat3> gl3_generators(const Field& f);

}  // namespace gl3trace
