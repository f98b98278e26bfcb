#include "gl3trace/matrix.hpp"

namespace gl3trace {

Mat3 mat3_identity() { return mat3_scalar(1); }

Mat3 mat3_scalar(uint64_t s) { return mat3_diag(s, s, s); }

Mat3 mat3_diag(uint64_t a, uint64_t b, uint64_t c) {
  Mat3 m;
  m.at(0, 0) = a;
  m.at(1, 1) = b;
  m.at(2, 2) = c;
  return m;
}

Mat3 mmul(const Field& f, const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      uint64_t s = 0;
      for (int k = 0; k < 3; ++k) s = f.add(s, f.mul(a.at(i, k), b.at(k, j)));
      r.at(i, j) = s;
    }
  return r;
}

std::array<uint64_t, 3> mat_vec(const Field& f, const Mat3& m,
                                const std::array<uint64_t, 3>& v) {
  std::array<uint64_t, 3> r{};
  for (int i = 0; i < 3; ++i) {
    uint64_t s = 0;
    for (int k = 0; k < 3; ++k) s = f.add(s, f.mul(m.at(i, k), v[k]));
    r[i] = s;
  }
  return r;
}

namespace {

uint64_t cof2(const Field& f, uint64_t a, uint64_t b, uint64_t c, uint64_t d) {
  return f.sub(f.mul(a, d), f.mul(b, c));
}

}  // namespace

uint64_t det(const Field& f, const Mat3& m) {
  uint64_t s = f.mul(m.at(0, 0), cof2(f, m.at(1, 1), m.at(1, 2), m.at(2, 1), m.at(2, 2)));
  s = f.sub(s, f.mul(m.at(0, 1), cof2(f, m.at(1, 0), m.at(1, 2), m.at(2, 0), m.at(2, 2))));
  s = f.add(s, f.mul(m.at(0, 2), cof2(f, m.at(1, 0), m.at(1, 1), m.at(2, 0), m.at(2, 1))));
  return s;
}

Mat3 inv(const Field& f, const Mat3& m) {
  uint64_t d = det(f, m);
  if (d == 0) throw SingularError("matrix is singular");
  uint64_t id = f.inv(d);
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      // adjugate entry (i, j) = cofactor (j, i)
      int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      // rows/cols picked cyclically keep the sign pattern uniform
      uint64_t cof = cof2(f, m.at(r0, c0), m.at(r0, c1), m.at(r1, c0), m.at(r1, c1));
      r.at(i, j) = f.mul(id, cof);
    }
  return r;
}

Mat3 transpose(const Mat3& m) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.at(i, j) = m.at(j, i);
  return r;
}

Mat3 scalar_mul(const Field& f, uint64_t s, const Mat3& m) {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r.e[i] = f.mul(s, m.e[i]);
  return r;
}

CharPoly3 charpoly(const Field& f, const Mat3& m) {
  CharPoly3 c;
  c.trace = f.add(f.add(m.at(0, 0), m.at(1, 1)), m.at(2, 2));
  uint64_t s = cof2(f, m.at(1, 1), m.at(1, 2), m.at(2, 1), m.at(2, 2));
  s = f.add(s, cof2(f, m.at(0, 0), m.at(0, 2), m.at(2, 0), m.at(2, 2)));
  s = f.add(s, cof2(f, m.at(0, 0), m.at(0, 1), m.at(1, 0), m.at(1, 1)));
  c.minor_sum = s;
  c.det = det(f, m);
  return c;
}

uint64_t charpoly_key(const Field& f, const CharPoly3& c) {
  return (c.trace * f.q() + c.minor_sum) * f.q() + c.det;
}

unsigned mat_rank(const Field& f, Mat3 m) {
  unsigned rank = 0;
  int row = 0;
  for (int col = 0; col < 3 && row < 3; ++col) {
    int pivot = -1;
    for (int r = row; r < 3; ++r)
      if (m.at(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    for (int c = 0; c < 3; ++c) std::swap(m.at(row, c), m.at(pivot, c));
    uint64_t ip = f.inv(m.at(row, col));
    for (int r = row + 1; r < 3; ++r) {
      uint64_t factor = f.mul(m.at(r, col), ip);
      if (factor == 0) continue;
      for (int c = col; c < 3; ++c)
        m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(row, c)));
    }
    ++row;
    ++rank;
  }
  return rank;
}

uint64_t mat3_code(const Field& f, const Mat3& m) {
  uint64_t code = 0;
  for (int i = 8; i >= 0; --i) code = code * f.q() + m.e[i];
  return code;
}

Mat3 mat3_from_code(const Field& f, uint64_t code) {
  Mat3 m;
  for (int i = 0; i < 9; ++i) {
    m.e[i] = code % f.q();
    code /= f.q();
  }
  return m;
}

Mat2 mat2_identity() {
  Mat2 m;
  m.at(0, 0) = m.at(1, 1) = 1;
  return m;
}

Mat2 mmul2(const Field& f, const Mat2& a, const Mat2& b) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      uint64_t s = 0;
      for (int k = 0; k < 2; ++k) s = f.add(s, f.mul(a.at(i, k), b.at(k, j)));
      r.at(i, j) = s;
    }
  return r;
}

uint64_t det2(const Field& f, const Mat2& m) {
  return cof2(f, m.at(0, 0), m.at(0, 1), m.at(1, 0), m.at(1, 1));
}

Mat2 inv2(const Field& f, const Mat2& m) {
  uint64_t d = det2(f, m);
  if (d == 0) throw SingularError("matrix is singular");
  uint64_t id = f.inv(d);
  Mat2 r;
  r.at(0, 0) = f.mul(id, m.at(1, 1));
  r.at(0, 1) = f.mul(id, f.neg(m.at(0, 1)));
  r.at(1, 0) = f.mul(id, f.neg(m.at(1, 0)));
  r.at(1, 1) = f.mul(id, m.at(0, 0));
  return r;
}

CharPoly2 charpoly2(const Field& f, const Mat2& m) {
  return {det2(f, m), f.add(m.at(0, 0), m.at(1, 1))};
}

uint64_t mat2_code(const Field& f, const Mat2& m) {
  uint64_t code = 0;
  for (int i = 3; i >= 0; --i) code = code * f.q() + m.e[i];
  return code;
}

Mat2 mat2_from_code(const Field& f, uint64_t code) {
  Mat2 m;
  for (int i = 0; i < 4; ++i) {
    m.e[i] = code % f.q();
    code /= f.q();
  }
  return m;
}

std::vector<Mat3> gl3_generators(const Field& f) {
  Mat3 cyc;  // e1 -> e2 -> e3 -> e1
  cyc.at(1, 0) = cyc.at(2, 1) = cyc.at(0, 2) = 1;
  Mat3 trans = mat3_identity();
  trans.at(0, 1) = 1;
  Mat3 dil = mat3_diag(f.generator(), 1, 1);
  return {cyc, trans, dil};
}

}  // namespace gl3trace
