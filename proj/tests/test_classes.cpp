#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "gl3trace/classes.hpp"

using namespace gl3trace;

namespace {

ConjClasses classes_for(const Field& fq) {
  Field fq2 = build_quadratic_extension(fq);
  Field fq3 = Field::extension(fq, 3);
  return ConjClasses::build(fq, fq2, fq3);
}

BigInt count_of_kind(const ConjClasses& cc, ClassKind k) {
  BigInt n = 0;
  for (const auto& d : cc.classes)
    if (d.kind == k) ++n;
  return n;
}

}  // namespace

TEST_CASE("class census") {
  for (uint64_t q0 : {2ull, 3ull, 4ull, 5ull, 7ull, 8ull, 9ull, 13ull, 16ull}) {
    CAPTURE(q0);
    Field fq = [&] {
      if (is_prime_u64(q0)) return Field::prime_field(q0);
      uint64_t p = q0 == 4 || q0 == 8 || q0 == 16 ? 2 : 3;
      unsigned n = q0 == 4 ? 2u : q0 == 8 ? 3u : q0 == 16 ? 4u : 2u;
      return Field::extension(Field::prime_field(p), n);
    }();
    ConjClasses cc = classes_for(fq);
    uint64_t q = q0;
    // number of conjugacy classes of GL3(F_q) is q^3 - q
    CHECK(BigInt(cc.classes.size()) == BigInt(q) * q * q - q);
    // class equation is verified inside build(); spot check per-kind counts
    CHECK(count_of_kind(cc, ClassKind::Central) == q - 1);
    CHECK(count_of_kind(cc, ClassKind::Hyp1) == BigInt(q - 1) * (q - 2));
    CHECK(count_of_kind(cc, ClassKind::Hyp2) ==
          BigInt(q - 1) * (q - 2) * (q - 3) / 6);
    CHECK(count_of_kind(cc, ClassKind::Par1) == q - 1);
    CHECK(count_of_kind(cc, ClassKind::Par2) == q - 1);
    CHECK(count_of_kind(cc, ClassKind::Par3) == BigInt(q - 1) * (q - 2));
    // elliptic families line up with character orbit counts
    CHECK(count_of_kind(cc, ClassKind::EllQuadScalar) ==
          BigInt(q) * (q - 1) * (q - 1) / 2);
    CHECK(count_of_kind(cc, ClassKind::EllCubic) == (BigInt(q) * q * q - q) / 3);
  }
}

TEST_CASE("every representative classifies to its own class") {
  for (uint64_t q : {2ull, 3ull, 5ull, 7ull}) {
    CAPTURE(q);
    Field fq = Field::prime_field(q);
    ConjClasses cc = classes_for(fq);
    for (size_t i = 0; i < cc.classes.size(); ++i) {
      CAPTURE(i);
      CHECK(cc.classify(fq, cc.classes[i].rep) == static_cast<int32_t>(i));
      CHECK(charpoly(fq, cc.classes[i].rep).det != 0);
    }
  }
}

TEST_CASE("classification is constant on conjugation orbits") {
  Field f = Field::prime_field(7);
  ConjClasses cc = classes_for(f);
  // one class of each kind
  std::set<ClassKind> seen;
  Mat3 g;
  g.e = {1, 2, 0, 0, 1, 3, 5, 0, 1};
  REQUIRE(det(f, g) != 0);
  Mat3 gi = inv(f, g);
  for (size_t i = 0; i < cc.classes.size(); ++i) {
    if (!seen.insert(cc.classes[i].kind).second) continue;
    Mat3 conj = mmul(f, mmul(f, g, cc.classes[i].rep), gi);
    CHECK(cc.classify(f, conj) == static_cast<int32_t>(i));
  }
  CHECK(seen.size() == 8);
}

TEST_CASE("orbit and centralizer oracles at q = 2") {
  Field f = Field::prime_field(2);
  ConjClasses cc = classes_for(f);
  for (size_t i = 0; i < cc.classes.size(); ++i) {
    CAPTURE(i);
    const auto& d = cc.classes[i];
    auto orbit = conjugation_orbit(f, d.rep);
    CHECK(BigInt(orbit.size()) == d.size);
    CHECK(centralizer_order_scan(f, d.rep) == d.centralizer_order);
    // every element of the orbit classifies back to the class
    for (uint64_t code : orbit)
      CHECK(cc.classify(f, mat3_from_code(f, code)) == static_cast<int32_t>(i));
  }
}

TEST_CASE("orbit and centralizer oracles at q = 3") {
  Field f = Field::prime_field(3);
  ConjClasses cc = classes_for(f);
  for (size_t i = 0; i < cc.classes.size(); ++i) {
    CAPTURE(i);
    const auto& d = cc.classes[i];
    auto orbit = conjugation_orbit(f, d.rep);
    CHECK(BigInt(orbit.size()) == d.size);
    CHECK(centralizer_order_scan(f, d.rep) == d.centralizer_order);
  }
}

TEST_CASE("orbit and centralizer oracles at q = 4, one class per kind") {
  Field f2 = Field::prime_field(2);
  Field f = Field::extension(f2, 2);
  ConjClasses cc = classes_for(f);
  std::set<ClassKind> seen;
  for (const auto& d : cc.classes) {
    if (!seen.insert(d.kind).second) continue;
    CAPTURE(class_kind_name(d.kind));
    auto orbit = conjugation_orbit(f, d.rep);
    CHECK(BigInt(orbit.size()) == d.size);
    CHECK(centralizer_order_scan(f, d.rep) == d.centralizer_order);
  }
  CHECK(seen.size() == 8);
}

TEST_CASE("centralizer orders at q = 5 across kinds") {
  Field f = Field::prime_field(5);
  ConjClasses cc = classes_for(f);
  std::set<ClassKind> seen;
  for (const auto& d : cc.classes) {
    if (!seen.insert(d.kind).second) continue;
    CAPTURE(class_kind_name(d.kind));
    CHECK(centralizer_order_scan(f, d.rep) == d.centralizer_order);
  }
}

TEST_CASE("full group scan partitions into classes at q = 3") {
  // classify every invertible 3x3 matrix; per-class tallies must equal the
  // closed-form sizes (this exercises the rank fixups on every input)
  Field f = Field::prime_field(3);
  ConjClasses cc = classes_for(f);
  std::vector<uint64_t> tally(cc.classes.size(), 0);
  uint64_t codes = 19683;  // 3^9
  for (uint64_t c = 0; c < codes; ++c) {
    Mat3 m = mat3_from_code(f, c);
    if (det(f, m) == 0) continue;
    ++tally[cc.classify(f, m)];
  }
  for (size_t i = 0; i < cc.classes.size(); ++i) {
    CAPTURE(i);
    CHECK(BigInt(tally[i]) == cc.classes[i].size);
  }
}

TEST_CASE("labels are distinct") {
  Field f = Field::prime_field(7);
  ConjClasses cc = classes_for(f);
  std::set<std::string> labels;
  for (const auto& d : cc.classes) labels.insert(d.label(f));
  CHECK(labels.size() == cc.classes.size());
}

TEST_CASE("commutant span reproduces every centralizer at q = 4") {
  Field f2 = Field::prime_field(2);
  Field f = Field::extension(f2, 2);
  ConjClasses cc = classes_for(f);
  std::set<ClassKind> seen;
  for (const auto& d : cc.classes) {
    if (!seen.insert(d.kind).second) continue;
    CAPTURE(class_kind_name(d.kind));
    auto units = centralizer_elements(f, d.rep);
    CHECK(BigInt(units.size()) == d.centralizer_order);
    for (const auto& u : units) CHECK(mmul(f, u, d.rep) == mmul(f, d.rep, u));
  }
  CHECK(seen.size() == 8);
}

TEST_CASE("commutant span reproduces noncentral centralizers at q = 7") {
  Field f = Field::prime_field(7);
  ConjClasses cc = classes_for(f);
  std::set<ClassKind> seen;
  for (const auto& d : cc.classes) {
    if (d.kind == ClassKind::Central) continue;  // 7^9 span, out of budget
    if (!seen.insert(d.kind).second) continue;
    CAPTURE(class_kind_name(d.kind));
    auto basis = commutant_basis(f, d.rep);
    CHECK(basis.size() <= 5);
    CHECK(BigInt(centralizer_elements(f, d.rep).size()) == d.centralizer_order);
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("full Jordan block commutes exactly with its polynomial algebra") {
  // The regular unipotent type is often misquoted as having the whole Borel
  // as centralizer; the truth is the units of F_q[N], of order q^2 (q - 1).
  Field f = Field::prime_field(7);
  ConjClasses cc = classes_for(f);
  for (const auto& d : cc.classes) {
    if (d.kind != ClassKind::Par2) continue;
    auto basis = commutant_basis(f, d.rep);
    CHECK(basis.size() == 3);  // I, N, N^2 for the nilpotent part N
    BigInt borel = BigInt(7 * 7 * 7) * 6 * 6 * 6;
    CHECK(d.centralizer_order == BigInt(7 * 7) * 6);
    CHECK(d.centralizer_order != borel);
    break;
  }
}
