#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <queue>
#include <set>
#include <unordered_set>

#include "gl3trace/halfspace.hpp"

using namespace gl3trace;

TEST_CASE("half-space census at q = 4") {
  Tower t = Tower::build(2, 2);
  HalfSpace h = HalfSpace::build(t);
  CHECK(h.num_points == 2880);  // (q^2-1)(q-1)q^3
  CHECK(h.contains(h.alpha_of(h.p0), h.beta_of(h.p0)));
  // base point is K-fixed
  CHECK(h.orbit_sizes[h.orbit_of_point(h.p0)] == 1);
  // orbit partition: three fixed points, all other orbits of size q^2+q+1
  CHECK(h.orbit_reps.size() == 140);
  uint64_t total = 0;
  int fixed = 0;
  for (uint32_t s : h.orbit_sizes) {
    total += s;
    if (s == 1)
      ++fixed;
    else
      CHECK(s == 21);
  }
  CHECK(total == h.num_points);
  CHECK(fixed == 3);
}

TEST_CASE("stabilizer of the base point is exactly the cyclic K") {
  Tower t = Tower::build(2, 2);
  HalfSpace h = HalfSpace::build(t);
  const Field& f = t.fq;
  // enumerate GL3(F_4) by closure and collect the stabilizer
  auto gens = gl3_generators(f);
  std::unordered_set<uint64_t> seen;
  std::queue<Mat3> todo;
  seen.insert(mat3_code(f, mat3_identity()));
  todo.push(mat3_identity());
  std::set<uint64_t> stab;
  while (!todo.empty()) {
    Mat3 cur = todo.front();
    todo.pop();
    for (const auto& g : gens) {
      Mat3 nxt = mmul(f, cur, g);
      if (seen.insert(mat3_code(f, nxt)).second) todo.push(nxt);
    }
  }
  for (uint64_t code : seen) {
    Mat3 m = mat3_from_code(f, code);
    if (h.act(m, h.p0) == h.p0) stab.insert(code);
  }
  CHECK(stab.size() == 63);  // q^3 - 1
  // the powers of k_gen are the whole stabilizer
  std::set<uint64_t> powers;
  Mat3 cur = mat3_identity();
  for (int i = 0; i < 63; ++i) {
    powers.insert(mat3_code(f, cur));
    cur = mmul(f, cur, h.k_gen);
  }
  CHECK(cur == mat3_identity());
  CHECK(powers == stab);
}

TEST_CASE("affine transversal property") {
  for (auto [p, n] : std::vector<std::pair<uint64_t, unsigned>>{{2, 2}, {7, 1}}) {
    CAPTURE(p);
    Tower t = Tower::build(p, n);
    HalfSpace h = HalfSpace::build(t);
    const Field& fq = t.fq;
    uint64_t checked = 0;
    for (uint64_t alpha = 0; alpha < h.q3; ++alpha)
      for (uint64_t beta = 0; beta < h.q3; ++beta) {
        if (!h.contains(alpha, beta)) continue;
        uint64_t pt = h.pack(alpha, beta);
        Mat3 rep = h.affine_rep(pt);
        REQUIRE(det(fq, rep) != 0);
        REQUIRE(h.act(rep, h.p0) == pt);
        ++checked;
      }
    CHECK(checked == h.num_points);
  }
}

TEST_CASE("the action is transitive and respects composition") {
  Tower t = Tower::build(7, 1);
  HalfSpace h = HalfSpace::build(t);
  CHECK(h.num_points == 98784);
  CHECK(h.orbit_reps.size() == 1736);
  int fixed = 0;
  for (uint32_t s : h.orbit_sizes)
    if (s == 1)
      ++fixed;
    else
      CHECK(s == 57);
  CHECK(fixed == 3);
  const Field& f = t.fq;
  // transitivity: BFS from p0 under the GL3 generators reaches everything
  auto gens = gl3_generators(f);
  std::unordered_set<uint64_t> seen{h.p0};
  std::queue<uint64_t> todo;
  todo.push(h.p0);
  while (!todo.empty()) {
    uint64_t cur = todo.front();
    todo.pop();
    for (const auto& g : gens) {
      uint64_t nxt = h.act(g, cur);
      if (seen.insert(nxt).second) todo.push(nxt);
    }
  }
  CHECK(seen.size() == h.num_points);
  // composition on a sample of group elements and points
  Mat3 g1, g2;
  g1.e = {1, 2, 0, 0, 1, 3, 5, 0, 1};
  g2.e = {1, 1, 0, 0, 1, 1, 1, 0, 1};
  REQUIRE(det(f, g1) != 0);
  REQUIRE(det(f, g2) != 0);
  Mat3 g12 = mmul(f, g1, g2);
  for (uint64_t pt : {h.p0, h.orbit_reps[5], h.orbit_reps[100], h.orbit_reps[1000]})
    CHECK(h.act(g12, pt) == h.act(g1, h.act(g2, pt)));
}

TEST_CASE("orbit representatives are rank-minimal") {
  Tower t = Tower::build(2, 2);
  HalfSpace h = HalfSpace::build(t);
  for (size_t i = 0; i < h.orbit_reps.size(); ++i) {
    uint64_t rep = h.orbit_reps[i];
    CHECK(h.orbit_of_point(rep) == i);
    uint64_t cur = h.act(h.k_gen, rep);
    while (cur != rep) {
      CHECK(h.rank_key(cur) > h.rank_key(rep));
      cur = h.act(h.k_gen, cur);
    }
  }
}

TEST_CASE("larger towers") {
  Tower t13 = Tower::build(13, 1);
  HalfSpace h13 = HalfSpace::build(t13);
  CHECK(h13.num_points == 4429152);
  CHECK(h13.orbit_reps.size() == 24206);
  Tower t16 = Tower::build(2, 4);
  HalfSpace h16 = HalfSpace::build(t16);
  CHECK(h16.num_points == 15667200);  // 255 * 15 * 4096
  uint64_t total = 0;
  int fixed = 0;
  for (uint32_t s : h16.orbit_sizes) {
    total += s;
    if (s == 1) ++fixed;
  }
  CHECK(total == h16.num_points);
  CHECK(fixed == 3);
}

TEST_CASE("budget checks") {
  Tower t = Tower::build(7, 1);
  CHECK_THROWS_AS(HalfSpace::build(t, 1000), BudgetExceededError);
}

TEST_CASE("from_coords round trip") {
  Tower t = Tower::build(7, 1);
  HalfSpace h = HalfSpace::build(t);
  uint64_t pt = h.from_coords({0, 0, 1}, {0, 1, 0});
  CHECK(pt == h.p0);
  uint64_t pt2 = h.from_coords({3, 1, 0}, {5, 0, 1});
  CHECK(h.alpha_of(pt2) == 3 + 1 * 7);
  CHECK(h.beta_of(pt2) == 5 + 49);
  CHECK(h.contains(h.alpha_of(pt2), h.beta_of(pt2)));
}

namespace {

// all invertible upper-triangular matrices, the claimed (too large) orbit
// group for the full-Jordan domain
std::vector<Mat3> upper_triangular_units(const Field& f) {
  uint64_t q = f.q();
  std::vector<Mat3> out;
  for (uint64_t d1 = 1; d1 < q; ++d1)
    for (uint64_t d2 = 1; d2 < q; ++d2)
      for (uint64_t d3 = 1; d3 < q; ++d3)
        for (uint64_t u12 = 0; u12 < q; ++u12)
          for (uint64_t u13 = 0; u13 < q; ++u13)
            for (uint64_t u23 = 0; u23 < q; ++u23) {
              Mat3 m;
              m.at(0, 0) = d1;
              m.at(1, 1) = d2;
              m.at(2, 2) = d3;
              m.at(0, 1) = u12;
              m.at(0, 2) = u13;
              m.at(1, 2) = u23;
              out.push_back(m);
            }
  return out;
}

const ClassDescriptor& rep_of(const ConjClasses& cc, ClassKind k) {
  for (const auto& d : cc.classes)
    if (d.kind == k) return d;
  throw Error("kind missing");
}

void check_domains(uint64_t p, unsigned n) {
  Tower t = Tower::build(p, n);
  HalfSpace h = HalfSpace::build(t);
  Field fq2 = build_quadratic_extension(t.fq);
  ConjClasses cc = ConjClasses::build(t.fq, fq2, t.fq3);
  uint64_t q = t.q;

  struct Expect {
    ClassKind kind;
    uint64_t size;
    bool exact;
  };
  // the full-Jordan listing pairs with the upper-triangular group, not with
  // the true centralizer; both pairings are checked below
  std::vector<Expect> table = {
      {ClassKind::Hyp1, q * q, true},
      {ClassKind::Hyp2, q * q * q * (q + 1), true},
      {ClassKind::Par1, q * q - 1, true},
      {ClassKind::Par3, q * q * (q * q - 1), true},
      {ClassKind::EllQuadScalar, q * q * q * (q - 1), true},
  };
  for (const auto& ex : table) {
    CAPTURE(class_kind_name(ex.kind));
    auto dom = fundamental_domain(h, ex.kind);
    CHECK(dom.size() == ex.size);
    auto grp = centralizer_elements(t.fq, rep_of(cc, ex.kind).rep);
    DomainCheck chk = verify_fundamental_domain(h, dom, grp);
    CHECK(chk.exact == ex.exact);
    // free orbits modulo scalars: sizes must tile the space evenly
    if (ex.exact) CHECK(BigInt(dom.size()) * grp.size() / (q - 1) == h.num_points);
  }

  // full-Jordan kind: the claimed domain works for the upper-triangular
  // group but not for the true centralizer, which is far smaller
  {
    auto dom = fundamental_domain(h, ClassKind::Par2);
    CHECK(dom.size() == q + 1);
    DomainCheck borel = verify_fundamental_domain(h, dom, upper_triangular_units(t.fq));
    CHECK(borel.exact);
    auto true_cz = centralizer_elements(t.fq, rep_of(cc, ClassKind::Par2).rep);
    DomainCheck honest = verify_fundamental_domain(h, dom, true_cz);
    CHECK(!honest.exact);
    // the true centralizer orbits are tiny; the claimed domain cannot cover
    CHECK(honest.covered <= dom.size() * true_cz.size());
    CHECK(honest.covered < h.num_points);
  }

  CHECK_THROWS_AS(fundamental_domain(h, ClassKind::EllCubic), UnsupportedKindError);
}

}  // namespace

TEST_CASE("fundamental domains verify at q = 4") {
  check_domains(2, 2);

  // the single-point domain for the scalar kind is exact because the group
  // is transitive (element list only feasible here)
  Tower t = Tower::build(2, 2);
  HalfSpace h = HalfSpace::build(t);
  Field fq2 = build_quadratic_extension(t.fq);
  ConjClasses cc = ConjClasses::build(t.fq, fq2, t.fq3);
  auto dom = fundamental_domain(h, ClassKind::Central);
  auto grp = centralizer_elements(t.fq, rep_of(cc, ClassKind::Central).rep, 300000);
  CHECK(BigInt(grp.size()) == gl3_order(4));
  DomainCheck chk = verify_fundamental_domain(h, dom, grp);
  CHECK(chk.exact);
  CHECK(chk.covered == h.num_points);
}

TEST_CASE("fundamental domains verify at q = 7") { check_domains(7, 1); }

TEST_CASE("domain verification detects mutations") {
  Tower t = Tower::build(2, 2);
  HalfSpace h = HalfSpace::build(t);
  Field fq2 = build_quadratic_extension(t.fq);
  ConjClasses cc = ConjClasses::build(t.fq, fq2, t.fq3);
  auto dom = fundamental_domain(h, ClassKind::Hyp1);
  auto grp = centralizer_elements(t.fq, rep_of(cc, ClassKind::Hyp1).rep);
  REQUIRE(verify_fundamental_domain(h, dom, grp).exact);

  auto missing = dom;
  missing.pop_back();
  DomainCheck m = verify_fundamental_domain(h, missing, grp);
  CHECK(!m.exact);
  CHECK(m.disjoint);
  CHECK(m.covered < h.num_points);

  auto doubled = dom;
  doubled.push_back(h.act(grp.front(), dom.front()));
  DomainCheck d = verify_fundamental_domain(h, doubled, grp);
  CHECK(!d.disjoint);
}
