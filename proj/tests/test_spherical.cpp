#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "gl3trace/spherical.hpp"

using namespace gl3trace;

TEST_CASE("factories evaluate as advertised") {
  Tower t = Tower::build(7, 1);
  HalfSpace h = HalfSpace::build(t);

  SphericalFn one = SphericalFn::constant(h, 1);
  SphericalFn half = SphericalFn::constant(h, Rat(1, 2));
  CHECK(one.values.size() == h.orbit_reps.size());
  CHECK(one.eval_point(h, h.p0) == 1);
  CHECK(half.eval_orbit(5) == Rat(1, 2));

  SphericalFn d = SphericalFn::delta_p0(h);
  Rat total = 0;
  for (const Rat& v : d.values) total += v;
  CHECK(total == 1);
  CHECK(d.eval_point(h, h.p0) == 1);
  // a point away from the base orbit
  uint64_t other = h.orbit_reps[h.orbit_of_point(h.p0) == 0 ? 1 : 0];
  CHECK(d.eval_point(h, other) == 0);

  SphericalFn d3 = SphericalFn::delta_orbit(h, 3);
  CHECK(d3.eval_orbit(3) == 1);
  CHECK(d3.eval_orbit(4) == 0);
  CHECK_THROWS_AS(SphericalFn::delta_orbit(h, 1u << 30), Error);
}

TEST_CASE("random functions are seed-deterministic with bounded entries") {
  Tower t = Tower::build(2, 2);
  HalfSpace h = HalfSpace::build(t);
  SphericalFn a = SphericalFn::random(h, 42);
  SphericalFn b = SphericalFn::random(h, 42);
  SphericalFn c = SphericalFn::random(h, 43);
  REQUIRE(a.values.size() == h.orbit_reps.size());
  CHECK(a.values == b.values);
  CHECK(a.values != c.values);
  for (const Rat& v : a.values) {
    CHECK(abs(v.get_num()) <= 9);
    CHECK(v.get_den() >= 1);
    CHECK(v.get_den() <= 5);
  }
}

TEST_CASE("table parsing fills listed orbits and rejects malformed lines") {
  Tower t = Tower::build(2, 2);
  HalfSpace h = HalfSpace::build(t);
  std::string text =
      "# leading comment\n"
      "0 3/4\n"
      "\n"
      "17 -2   # trailing comment\n"
      "139 5\n";
  SphericalFn f = SphericalFn::from_table(h, text);
  CHECK(f.eval_orbit(0) == Rat(3, 4));
  CHECK(f.eval_orbit(17) == -2);
  CHECK(f.eval_orbit(139) == 5);
  CHECK(f.eval_orbit(1) == 0);

  CHECK_THROWS_AS(SphericalFn::from_table(h, "0\n"), Error);
  CHECK_THROWS_AS(SphericalFn::from_table(h, "0 1 junk\n"), Error);
  CHECK_THROWS_AS(SphericalFn::from_table(h, "0x 1\n"), Error);
  CHECK_THROWS_AS(SphericalFn::from_table(h, "140 1\n"), Error);
  CHECK_THROWS_AS(SphericalFn::from_table(h, "0 1/0\n"), DenominatorZeroError);
}

TEST_CASE("2x2 class enumeration matches conjugation closure") {
  Tower t = Tower::build(7, 1);
  const Field& f = t.fq;

  Mat2 scalar;
  scalar.at(0, 0) = scalar.at(1, 1) = 3;
  Mat2 jordan = scalar;
  jordan.at(0, 1) = 1;
  Mat2 split;
  split.at(0, 0) = 1;
  split.at(1, 1) = 2;
  Mat2 irred;  // companion of x^2 + 1, irreducible mod 7
  irred.at(0, 1) = 6;
  irred.at(1, 0) = 1;

  auto check_kind = [&](const Mat2& kappa, size_t expect) {
    auto fast = gl2_class_elements(f, kappa);
    auto slow = gl2_class_elements_bfs(f, kappa);
    CHECK(fast.size() == expect);
    CHECK(fast == slow);  // both sorted by matrix code
  };
  check_kind(scalar, 1);
  check_kind(jordan, 48);  // q^2 - 1
  check_kind(split, 56);   // q^2 + q
  check_kind(irred, 42);   // q^2 - q

  // enumeration is member-independent: lower Jordan gives the same class
  Mat2 jordan_low = scalar;
  jordan_low.at(1, 0) = 1;
  CHECK(gl2_class_elements(f, jordan_low) == gl2_class_elements(f, jordan));

  Mat2 sing;
  sing.at(0, 0) = 1;
  CHECK_THROWS_AS(gl2_class_elements(f, sing), SingularKappaError);
  CHECK_THROWS_AS(gl2_class_elements_bfs(f, sing), SingularKappaError);
}

TEST_CASE("horocycle transform pins at q = 7") {
  Tower t = Tower::build(7, 1);
  HalfSpace h = HalfSpace::build(t);
  SphericalFn d = SphericalFn::delta_p0(h);
  SphericalFn one = SphericalFn::constant(h, 1);

  Mat2 id2 = mat2_identity();
  // only the zero translation fixes the base point, and its orbit is a singleton
  CHECK(horocycle_transform(h, d, id2) == 1);

  // constant 1 counts the summation domain: q^2 translations per class member
  Mat2 jordan = mat2_identity();
  jordan.at(0, 1) = 1;
  Mat2 split;
  split.at(0, 0) = 1;
  split.at(1, 1) = 2;
  Mat2 irred;
  irred.at(0, 1) = 6;
  irred.at(1, 0) = 1;
  CHECK(horocycle_transform(h, one, id2) == 49);
  CHECK(horocycle_transform(h, one, jordan) == 49 * 48);
  CHECK(horocycle_transform(h, one, split) == 49 * 56);
  CHECK(horocycle_transform(h, one, irred) == 49 * 42);
}

// Summing the transform over one representative per 2x2 class recovers the
// plain sum of f over the half-space: the embedded affine matrices hit every
// point exactly once.
static void check_class_sum(uint64_t p, unsigned n, uint64_t seed) {
  Tower t = Tower::build(p, n);
  HalfSpace h = HalfSpace::build(t);
  const Field& fq = t.fq;
  SphericalFn f = SphericalFn::random(h, seed);

  // min-code representative per class, keyed by charpoly plus scalar flag
  std::map<std::pair<uint64_t, bool>, Mat2> reps;
  uint64_t q = fq.q();
  for (uint64_t c = 0; c < q * q * q * q; ++c) {
    Mat2 m = mat2_from_code(fq, c);
    if (det2(fq, m) == 0) continue;
    CharPoly2 cp = charpoly2(fq, m);
    bool is_scalar = m.at(0, 1) == 0 && m.at(1, 0) == 0 && m.at(0, 0) == m.at(1, 1);
    reps.emplace(std::make_pair(cp.trace * q + cp.det, is_scalar), m);
  }
  CHECK(reps.size() == q * q - 1);  // class count in GL2

  Rat via_classes = 0;
  for (const auto& [key, kappa] : reps) via_classes += horocycle_transform(h, f, kappa);
  Rat direct = 0;
  for (size_t i = 0; i < h.orbit_reps.size(); ++i)
    direct += Rat(h.orbit_sizes[i]) * f.eval_orbit(static_cast<uint32_t>(i));
  CHECK(via_classes == direct);
}

TEST_CASE("class-rep horocycle sums tile the half-space") {
  check_class_sum(2, 2, 7);
  check_class_sum(7, 1, 9);
}

TEST_CASE("matrix evaluation is bi-invariant under the stabilizer group") {
  Tower t = Tower::build(2, 2);
  HalfSpace h = HalfSpace::build(t);
  const Field& fq = t.fq;
  SphericalFn f = SphericalFn::random(h, 5);

  std::vector<Mat3> gs = gl3_generators(fq);
  gs.push_back(mmul(fq, gs[0], gs[1]));
  gs.push_back(mmul(fq, gs[2], mmul(fq, gs[1], gs[0])));
  for (const Mat3& g : gs) {
    Rat base = f.eval_mat(h, g);
    CHECK(f.eval_mat(h, mmul(fq, h.k_gen, g)) == base);
    CHECK(f.eval_mat(h, mmul(fq, g, h.k_gen)) == base);
    CHECK(f.eval_mat(h, mmul(fq, h.k_gen, mmul(fq, g, h.k_gen))) == base);
  }
}
