#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <queue>
#include <unordered_set>

#include "gl3trace/matrix.hpp"

using namespace gl3trace;

namespace {

Mat3 m3(std::array<uint64_t, 9> e) {
  Mat3 m;
  m.e = e;
  return m;
}

}  // namespace

TEST_CASE("det and inverse over F_7") {
  Field f = Field::prime_field(7);
  Mat3 a = m3({2, 1, 0, 1, 3, 1, 0, 1, 1});
  CHECK(det(f, a) == 3);
  Mat3 ai = inv(f, a);
  CHECK(mmul(f, a, ai) == mat3_identity());
  CHECK(mmul(f, ai, a) == mat3_identity());
  Mat3 s = m3({1, 2, 3, 4, 5, 6, 0, 1, 2});
  CHECK(det(f, s) == 0);
  CHECK_THROWS_AS(inv(f, s), SingularError);
  CHECK(mat_rank(f, s) == 2);
}

TEST_CASE("rank") {
  Field f = Field::prime_field(7);
  CHECK(mat_rank(f, mat3_scalar(0)) == 0);
  CHECK(mat_rank(f, mat3_scalar(1)) == 3);
  CHECK(mat_rank(f, mat3_diag(1, 1, 0)) == 2);
  CHECK(mat_rank(f, m3({0, 1, 0, 0, 0, 0, 0, 0, 0})) == 1);
}

TEST_CASE("charpoly via companion matrix") {
  Field f = Field::prime_field(7);
  // companion of x^3 - t x^2 + s x - d
  for (uint64_t t = 0; t < 7; ++t)
    for (uint64_t s = 0; s < 7; ++s)
      for (uint64_t d = 0; d < 7; ++d) {
        Mat3 c = m3({0, 0, d, 1, 0, f.neg(s), 0, 1, t});
        CharPoly3 cp = charpoly(f, c);
        CHECK(cp.trace == t);
        CHECK(cp.minor_sum == s);
        CHECK(cp.det == d);
      }
}

TEST_CASE("charpoly is a conjugation invariant") {
  Field f = Field::prime_field(5);
  Mat3 a = m3({1, 2, 0, 0, 3, 1, 4, 0, 2});
  Mat3 g = m3({1, 1, 0, 0, 1, 2, 3, 0, 1});
  REQUIRE(det(f, g) != 0);
  Mat3 conj = mmul(f, mmul(f, g, a), inv(f, g));
  CHECK(charpoly(f, a) == charpoly(f, conj));
  CHECK(charpoly_key(f, charpoly(f, a)) == charpoly_key(f, charpoly(f, conj)));
}

TEST_CASE("matrix codes round trip") {
  Field f7 = Field::prime_field(7);
  Mat3 a = m3({2, 1, 0, 1, 3, 1, 0, 1, 6});
  CHECK(mat3_from_code(f7, mat3_code(f7, a)) == a);
  Field f2 = Field::prime_field(2);
  Field f16 = Field::extension(f2, 4);
  Mat3 b = m3({15, 1, 0, 7, 3, 1, 0, 12, 6});
  uint64_t code = mat3_code(f16, b);
  CHECK(code < 68719476736ull);  // 16^9
  CHECK(mat3_from_code(f16, code) == b);
  // code order: entry (0,0) is the least significant digit
  CHECK(mat3_code(f7, mat3_from_code(f7, 3)) == 3);
}

TEST_CASE("mat_vec agrees with multiplication") {
  Field f = Field::prime_field(13);
  Mat3 a = m3({2, 1, 0, 1, 3, 1, 5, 1, 6});
  Mat3 b = m3({1, 0, 0, 4, 0, 0, 9, 0, 0});
  Mat3 ab = mmul(f, a, b);
  auto v = mat_vec(f, a, {1, 4, 9});
  CHECK(v[0] == ab.at(0, 0));
  CHECK(v[1] == ab.at(1, 0));
  CHECK(v[2] == ab.at(2, 0));
}

TEST_CASE("generators generate the full group") {
  for (uint64_t p : {2ull, 3ull}) {
    Field f = Field::prime_field(p);
    auto gens = gl3_generators(f);
    for (const auto& g : gens) REQUIRE(det(f, g) != 0);
    std::unordered_set<uint64_t> seen;
    std::queue<Mat3> todo;
    seen.insert(mat3_code(f, mat3_identity()));
    todo.push(mat3_identity());
    while (!todo.empty()) {
      Mat3 cur = todo.front();
      todo.pop();
      for (const auto& g : gens) {
        Mat3 nxt = mmul(f, cur, g);
        if (seen.insert(mat3_code(f, nxt)).second) todo.push(nxt);
      }
    }
    CHECK(BigInt(seen.size()) == gl3_order(p));
  }
}

TEST_CASE("generators generate GL3 of F_4") {
  Field f2 = Field::prime_field(2);
  Field f4 = Field::extension(f2, 2);
  auto gens = gl3_generators(f4);
  std::unordered_set<uint64_t> seen;
  std::queue<Mat3> todo;
  seen.insert(mat3_code(f4, mat3_identity()));
  todo.push(mat3_identity());
  while (!todo.empty()) {
    Mat3 cur = todo.front();
    todo.pop();
    for (const auto& g : gens) {
      Mat3 nxt = mmul(f4, cur, g);
      if (seen.insert(mat3_code(f4, nxt)).second) todo.push(nxt);
    }
  }
  CHECK(BigInt(seen.size()) == gl3_order(4));  // 63 * 60 * 48 = 181440
}

TEST_CASE("two by two") {
  Field f = Field::prime_field(7);
  Mat2 a;
  a.e = {2, 1, 3, 4};
  CHECK(det2(f, a) == 5);
  Mat2 ai = inv2(f, a);
  CHECK(mmul2(f, a, ai) == mat2_identity());
  CharPoly2 cp = charpoly2(f, a);
  CHECK(cp.trace == 6);
  CHECK(cp.det == 5);
  CHECK(mat2_from_code(f, mat2_code(f, a)) == a);
  Mat2 s;
  s.e = {2, 1, 4, 2};
  CHECK_THROWS_AS(inv2(f, s), SingularError);
}
