#include "gl3trace/geometric.hpp"

#include <unordered_set>

#include "gl3trace/errors.hpp"

namespace gl3trace {

namespace {

// q^9 as BigInt; the scan loops refuse to start past the budget.
BigInt code_space(uint64_t q) { return big_pow(BigInt(q), 9); }

void check_scan_budget(uint64_t q, uint64_t budget, const char* what) {
  if (code_space(q) > BigInt(budget))
    throw BudgetExceededError(std::string(what) + ": q^9 exceeds budget");
}

}  // namespace

Rat GroupScan::orbital_sum(const SphericalFn& f, int32_t class_id) const {
  Rat s = 0;
  const auto& row = hist[static_cast<size_t>(class_id)];
  for (size_t o = 0; o < row.size(); ++o)
    if (row[o]) s += Rat(row[o]) * f.values[o];
  return s;
}

BigInt GroupScan::class_total(int32_t class_id) const {
  BigInt t = 0;
  for (uint32_t c : hist[static_cast<size_t>(class_id)]) t += c;
  return t;
}

GroupScan GroupScan::build(const HalfSpace& h, const ConjClasses& cc,
                           uint64_t budget) {
  const Field& fq = h.tower.fq;
  const Field& f3 = h.tower.fq3;
  const uint64_t q = fq.q();
  check_scan_budget(q, budget, "group scan");

  GroupScan gs;
  gs.hist.assign(cc.classes.size(),
                 std::vector<uint32_t>(h.orbit_reps.size(), 0));

  // Rows one and two are the outer six loops; their 2x2 minors m1, m2, m3
  // turn the inner determinant into one cofactor expansion along row three.
  for (uint64_t r00 = 0; r00 < q; ++r00)
    for (uint64_t r01 = 0; r01 < q; ++r01)
      for (uint64_t r02 = 0; r02 < q; ++r02)
        for (uint64_t r10 = 0; r10 < q; ++r10)
          for (uint64_t r11 = 0; r11 < q; ++r11)
            for (uint64_t r12 = 0; r12 < q; ++r12) {
              const uint64_t m1 = fq.sub(fq.mul(r01, r12), fq.mul(r02, r11));
              const uint64_t m2 = fq.sub(fq.mul(r00, r12), fq.mul(r02, r10));
              const uint64_t m3 = fq.sub(fq.mul(r00, r11), fq.mul(r01, r10));
              // numerator codes of g . p0 (coordinate triples ARE codes)
              const uint64_t na = r02 + r01 * q + r00 * q * q;
              const uint64_t nb = r12 + r11 * q + r10 * q * q;
              const uint64_t tr12 = fq.add(r00, r11);
              for (uint64_t u = 0; u < q; ++u)
                for (uint64_t v = 0; v < q; ++v)
                  for (uint64_t w = 0; w < q; ++w) {
                    const uint64_t dt = fq.add(
                        fq.sub(fq.mul(u, m1), fq.mul(v, m2)), fq.mul(w, m3));
                    if (dt == 0) continue;
                    const uint64_t den = w + v * q + u * q * q;
                    const uint64_t di = f3.inv(den);
                    const uint64_t pa = f3.mul(na, di);
                    const uint64_t pb = f3.mul(nb, di);
                    const uint32_t orbit =
                        h.orbit_of[h.point_index[pa * h.q3 + pb]];
                    const uint64_t tr = fq.add(tr12, w);
                    const uint64_t ms =
                        fq.add(m3, fq.add(fq.sub(fq.mul(r00, w), fq.mul(r02, u)),
                                          fq.sub(fq.mul(r11, w), fq.mul(r12, v))));
                    const uint64_t key = charpoly_key(fq, {dt, ms, tr});
                    int32_t id = cc.unique_id[key];
                    if (id < 0) {
                      // repeated eigenvalue: fall back to the rank test
                      Mat3 m;
                      m.e = {r00, r01, r02, r10, r11, r12, u, v, w};
                      id = cc.classify(fq, m);
                    }
                    ++gs.hist[static_cast<size_t>(id)][orbit];
                  }
            }

  // census: the scan must reproduce every closed class size
  BigInt grand = 0;
  for (size_t id = 0; id < cc.classes.size(); ++id) {
    BigInt t = gs.class_total(static_cast<int32_t>(id));
    if (t != cc.classes[id].size)
      throw Error("group scan census mismatch for class " +
                  cc.classes[id].label(fq));
    grand += t;
  }
  if (grand != gl3_order(BigInt(q)))
    throw Error("group scan census misses the group order");
  return gs;
}

Rat OrbitProjection::sum(const SphericalFn& f) const {
  Rat s = 0;
  for (size_t o = 0; o < counts.size(); ++o)
    if (counts[o]) s += Rat(counts[o]) * f.values[o];
  return s;
}

OrbitProjection OrbitProjection::build(const HalfSpace& h, const Mat3& gamma,
                                       uint64_t budget) {
  const Field& fq = h.tower.fq;
  OrbitProjection pr;
  pr.counts.assign(h.orbit_reps.size(), 0);
  auto codes = conjugation_orbit(fq, gamma, budget);
  pr.class_size = codes.size();
  for (uint64_t code : codes) {
    Mat3 m = mat3_from_code(fq, code);
    ++pr.counts[h.orbit_of_point(h.act(m, h.p0))];
  }
  return pr;
}

Rat orbital_sum_oracle(const HalfSpace& h, const SphericalFn& f,
                       const Mat3& gamma, uint64_t budget) {
  return OrbitProjection::build(h, gamma, budget).sum(f);
}

Rat orbital_sum_via_cosets(const HalfSpace& h, const SphericalFn& f,
                           const Mat3& gamma, uint64_t budget) {
  const Field& fq = h.tower.fq;
  const uint64_t q = fq.q();
  check_scan_budget(q, budget, "coset enumeration");
  const uint64_t n = code_space(q).get_ui();

  std::unordered_set<uint64_t> seen;
  Rat s = 0;
  for (uint64_t code = 0; code < n; ++code) {
    Mat3 g = mat3_from_code(fq, code);
    if (det(fq, g) == 0) continue;
    Mat3 conj = mmul(fq, inv(fq, g), mmul(fq, gamma, g));
    if (seen.insert(mat3_code(fq, conj)).second) s += f.eval_mat(h, conj);
  }
  return s;
}

CosetSpace CosetSpace::build(const HalfSpace& h, uint64_t p, uint64_t budget) {
  const Field& fq = h.tower.fq;
  const uint64_t q = fq.q();
  CosetSpace cs;
  if (p == q) {
    cs.full_group = true;
    cs.reps.push_back(mat3_identity());
    cs.rep_inv.push_back(mat3_identity());
    return cs;
  }

  // subgroup elements: entry codes below p are exactly the subfield matrices
  BigInt p9 = code_space(p);
  if (p9 > BigInt(budget))
    throw BudgetExceededError("subgroup enumeration: p^9 exceeds budget");
  for (uint64_t code = 0; code < p9.get_ui(); ++code) {
    Mat3 m;
    uint64_t c = code;
    for (int i = 0; i < 9; ++i) {
      m.e[i] = c % p;
      c /= p;
    }
    if (det(fq, m) != 0) cs.subgroup.push_back(m);
  }
  if (BigInt(cs.subgroup.size()) != gl3_order(BigInt(p)))
    throw Error("subgroup census misses the subgroup order");

  check_scan_budget(q, budget, "coset transversal");
  const uint64_t n = code_space(q).get_ui();
  std::vector<bool> absorbed(n, false);
  for (uint64_t code = 0; code < n; ++code) {
    if (absorbed[code]) continue;
    Mat3 g = mat3_from_code(fq, code);
    if (det(fq, g) == 0) continue;
    // minimal-code representative of a fresh right coset
    cs.reps.push_back(g);
    cs.rep_inv.push_back(inv(fq, g));
    for (const Mat3& gm : cs.subgroup)
      absorbed[mat3_code(fq, mmul(fq, gm, g))] = true;
  }
  BigInt expect = gl3_order(BigInt(q)) / gl3_order(BigInt(p));
  if (BigInt(cs.reps.size()) != expect)
    throw Error("coset transversal has the wrong index");
  return cs;
}

Rat DirectTrace::eval(const SphericalFn& f) const {
  Rat s = 0;
  for (size_t o = 0; o < orbit_counts.size(); ++o)
    if (orbit_counts[o]) s += Rat(orbit_counts[o]) * f.values[o];
  return s;
}

DirectTrace DirectTrace::build(const HalfSpace& h, const CosetSpace& cs,
                               uint64_t budget) {
  const Field& fq = h.tower.fq;
  const Field& f3 = h.tower.fq3;
  const uint64_t q = fq.q();
  DirectTrace dt;
  dt.orbit_counts.assign(h.orbit_reps.size(), 0);

  if (cs.full_group) {
    // single coset: the double sum collapses to one pass over the group
    check_scan_budget(q, budget, "direct trace");
    for (uint64_t r00 = 0; r00 < q; ++r00)
      for (uint64_t r01 = 0; r01 < q; ++r01)
        for (uint64_t r02 = 0; r02 < q; ++r02)
          for (uint64_t r10 = 0; r10 < q; ++r10)
            for (uint64_t r11 = 0; r11 < q; ++r11)
              for (uint64_t r12 = 0; r12 < q; ++r12) {
                const uint64_t m1 = fq.sub(fq.mul(r01, r12), fq.mul(r02, r11));
                const uint64_t m2 = fq.sub(fq.mul(r00, r12), fq.mul(r02, r10));
                const uint64_t m3 = fq.sub(fq.mul(r00, r11), fq.mul(r01, r10));
                const uint64_t na = r02 + r01 * q + r00 * q * q;
                const uint64_t nb = r12 + r11 * q + r10 * q * q;
                for (uint64_t u = 0; u < q; ++u)
                  for (uint64_t v = 0; v < q; ++v)
                    for (uint64_t w = 0; w < q; ++w) {
                      const uint64_t d = fq.add(
                          fq.sub(fq.mul(u, m1), fq.mul(v, m2)), fq.mul(w, m3));
                      if (d == 0) continue;
                      const uint64_t den = w + v * q + u * q * q;
                      const uint64_t di = f3.inv(den);
                      const uint64_t pa = f3.mul(na, di);
                      const uint64_t pb = f3.mul(nb, di);
                      ++dt.orbit_counts[h.orbit_of[h.point_index[pa * h.q3 + pb]]];
                    }
              }
  } else {
    for (size_t i = 0; i < cs.reps.size(); ++i)
      for (const Mat3& gm : cs.subgroup) {
        Mat3 m = mmul(fq, cs.rep_inv[i], mmul(fq, gm, cs.reps[i]));
        ++dt.orbit_counts[h.orbit_of_point(h.act(m, h.p0))];
      }
  }

  BigInt total = 0;
  for (uint64_t c : dt.orbit_counts) total += c;
  if (total != gl3_order(BigInt(q)))
    throw Error("direct trace landing counts miss the group order");
  return dt;
}

Rat split_torus_orbital(const HalfSpace& h, const SphericalFn& f, uint64_t a,
                        uint64_t b, uint64_t c) {
  const Field& fq = h.tower.fq;
  Mat2 kappa;
  kappa.e = {fq.div(a, c), 0, 0, fq.div(b, c)};
  const uint64_t q = fq.q();
  return Rat(BigInt(q) * q + q + 1) * horocycle_transform(h, f, kappa);
}

Rat orbital_sum_split_quad(const HalfSpace& h, const SphericalFn& f,
                           uint64_t eta, uint64_t e) {
  const Field& fq = h.tower.fq;
  if (h.tower.n % 2 != 0)
    throw WrongBranchError(
        "split quadratic orbital needs an even tower level");
  if (!fq.in_subfield(eta, 2) || fq.in_subfield(eta, 1))
    throw Error("eigenvalue must sit in the quadratic subfield, "
                "outside the prime field");
  return split_torus_orbital(h, f, eta, fq.frob(eta), e);
}

Rat orbital_sum_split_cubic(const HalfSpace& h, const SphericalFn& f,
                            uint64_t xi) {
  const Field& fq = h.tower.fq;
  if (h.tower.n % 3 != 0)
    throw WrongBranchError(
        "split cubic orbital needs a tower level divisible by three");
  if (!fq.in_subfield(xi, 3) || fq.in_subfield(xi, 1))
    throw Error("eigenvalue must sit in the cubic subfield, "
                "outside the prime field");
  return split_torus_orbital(h, f, fq.frob(xi), fq.frob(fq.frob(xi)), xi);
}

namespace {

// Regular representation of xi = al + be t + ep t^2 acting on {1, t, t^2},
// t^3 = delta; always invertible for xi != 0, and lies in the base-point
// stabilizer.
Mat3 regular_rep(const Tower& t, uint64_t xi) {
  const Field& fq = t.fq;
  auto co = t.fq3.coords(xi);
  const uint64_t al = co[0], be = co[1], ep = co[2];
  Mat3 m;
  m.e = {al, fq.mul(ep, t.delta), fq.mul(be, t.delta),
         be, al,                  fq.mul(ep, t.delta),
         ep, be,                  al};
  return m;
}

ClosedOrbital cubic_entry_formula(const HalfSpace& h, const SphericalFn& fn,
                                  uint64_t xi) {
  const Tower& t = h.tower;
  const Field& fq = t.fq;
  const Field& f3 = t.fq3;
  const uint64_t q = fq.q();
  const uint64_t dl = t.delta;
  auto co = f3.coords(xi);
  const uint64_t al = co[0], be = co[1], ep = co[2];

  auto M = [&](uint64_t x, uint64_t y) { return fq.mul(x, y); };
  auto A = [&](uint64_t x, uint64_t y) { return fq.add(x, y); };
  auto S = [&](uint64_t x, uint64_t y) { return fq.sub(x, y); };

  ClosedOrbital out;
  out.value = 0;
  // The index set is the sextuples with bd - ae != 0, in bijection with the
  // points of the half-space.  The printed leading scalar is dropped:
  // scalar matrices fix every point, so it cannot change the summand.
  for (uint64_t a = 0; a < q; ++a)
    for (uint64_t b = 0; b < q; ++b)
      for (uint64_t d = 0; d < q; ++d)
        for (uint64_t e = 0; e < q; ++e) {
          const uint64_t bd_ae = S(M(b, d), M(a, e));
          if (bd_ae == 0) continue;
          for (uint64_t c = 0; c < q; ++c)
            for (uint64_t f = 0; f < q; ++f) {
              const uint64_t x11 =
                  A(M(al, bd_ae),
                    A(M(be, S(A(M(a, b), M(c, M(d, e))), M(b, M(d, f)))),
                      M(ep, S(S(M(a, M(c, e)), M(a, M(b, f))),
                              M(M(d, e), dl)))));
              const uint64_t x21 =
                  A(M(be, S(S(M(a, M(d, f)), M(a, a)), M(c, M(d, d)))),
                    M(ep, A(S(M(M(a, a), f), M(a, M(c, d))), M(M(d, d), dl))));
              const uint64_t x31 = A(M(be, d), M(ep, a));
              const uint64_t x12 =
                  A(M(be, A(S(M(c, M(e, e)), M(b, M(e, f))), M(b, b))),
                    M(ep, S(S(M(b, M(c, e)), M(M(b, b), f)), M(M(e, e), dl))));
              const uint64_t x22 =
                  A(M(al, bd_ae),
                    A(M(be, S(S(M(a, M(e, f)), M(c, M(d, e))), M(a, b))),
                      M(ep, A(S(M(a, M(b, f)), M(b, M(c, d))),
                              M(M(d, e), dl)))));
              const uint64_t x32 = A(M(be, e), M(ep, b));
              const uint64_t x13 =
                  M(be, S(S(A(M(c, M(e, f)), M(b, c)), M(b, M(f, f))),
                          M(e, dl)));
              const uint64_t x23 =
                  A(M(be, A(S(S(M(a, M(f, f)), M(c, M(d, f))), M(a, c)),
                            M(d, dl))),
                    M(ep, S(A(S(M(a, M(c, f)), M(a, M(c, c))),
                              M(M(d, f), dl)),
                            M(a, dl))));
              const uint64_t x33 = A(al, A(M(be, f), M(ep, c)));

              const uint64_t den = x33 + x32 * q + x31 * q * q;
              if (den == 0) {
                ++out.undefined_terms;
                continue;
              }
              const uint64_t di = f3.inv(den);
              const uint64_t pa = f3.mul(x13 + x12 * q + x11 * q * q, di);
              const uint64_t pb = f3.mul(x23 + x22 * q + x21 * q * q, di);
              const uint32_t idx = h.point_index[pa * h.q3 + pb];
              if (idx == ~0u) {
                ++out.undefined_terms;
                continue;
              }
              out.value += fn.values[h.orbit_of[idx]];
            }
        }
  return out;
}

}  // namespace

Rat orbital_sum_cubic_conjugation(const HalfSpace& h, const SphericalFn& fn,
                                  uint64_t xi) {
  const Field& fq = h.tower.fq;
  const uint64_t q = fq.q();
  Mat3 gk = regular_rep(h.tower, xi);
  Rat s = 0;
  for (uint64_t a = 0; a < q; ++a)
    for (uint64_t b = 0; b < q; ++b)
      for (uint64_t d = 0; d < q; ++d)
        for (uint64_t e = 0; e < q; ++e) {
          if (fq.sub(fq.mul(b, d), fq.mul(a, e)) == 0) continue;
          for (uint64_t c = 0; c < q; ++c)
            for (uint64_t f = 0; f < q; ++f) {
              Mat3 y;
              y.e = {a, b, c, d, e, f, 0, 0, 1};
              Mat3 conj = mmul(fq, inv(fq, y), mmul(fq, gk, y));
              s += fn.eval_mat(h, conj);
            }
        }
  return s;
}

ClosedOrbital orbital_sum_closed(const HalfSpace& h, const SphericalFn& f,
                                 const ClassDescriptor& d) {
  const Field& fq = h.tower.fq;
  const uint64_t q = fq.q();
  const Rat deg = Rat(BigInt(q) * q + q + 1);
  ClosedOrbital out;

  switch (d.kind) {
    case ClassKind::Central:
      // scalars fix every point
      out.value = f.values[h.orbit_of_point(h.p0)];
      return out;
    case ClassKind::Hyp1: {
      Mat2 kappa;
      uint64_t r = fq.div(d.params[0], d.params[1]);
      kappa.e = {r, 0, 0, r};
      out.value = deg * horocycle_transform(h, f, kappa);
      out.hf_inputs.push_back(kappa);
      return out;
    }
    case ClassKind::Hyp2: {
      out.value = split_torus_orbital(h, f, d.params[0], d.params[1],
                                      d.params[2]);
      Mat2 kappa;
      kappa.e = {fq.div(d.params[0], d.params[2]), 0, 0,
                 fq.div(d.params[1], d.params[2])};
      out.hf_inputs.push_back(kappa);
      return out;
    }
    case ClassKind::Par1: {
      out.value = deg * (horocycle_transform(h, f, mat2_identity()) -
                         f.values[h.orbit_of_point(h.p0)]);
      out.hf_inputs.push_back(mat2_identity());
      return out;
    }
    case ClassKind::Par2: {
      // two-piece point listing, independent of the eigenvalue
      Rat s = f.values[h.orbit_of_point(h.from_coords({0, 1, 1}, {1, 1, 0}))];
      for (uint64_t v = 0; v < q; ++v) {
        uint64_t a1 = 1;
        uint64_t a2 = fq.neg(fq.mul(v, v));
        uint64_t a3 = fq.sub(1, v);
        uint64_t b2 = fq.add(v, 1);
        s += f.values[h.orbit_of_point(h.from_coords({a1, a2, a3}, {0, b2, 1}))];
      }
      out.value = deg * s;
      return out;
    }
    case ClassKind::Par3: {
      Mat2 kappa;
      uint64_t r = fq.div(d.params[0], d.params[1]);
      kappa.e = {r, 1, 0, r};
      out.value = deg * horocycle_transform(h, f, kappa);
      out.hf_inputs.push_back(kappa);
      return out;
    }
    case ClassKind::EllQuadScalar: {
      if (h.tower.n % 2 == 0)
        throw WrongBranchError(
            "irreducible-quadratic closed form covers odd tower levels; "
            "even levels split and use the split quadratic branch");
      // recover the quadratic factor x^2 - tr x + nm from the charpoly
      const uint64_t e = d.params[1];
      CharPoly3 cp = charpoly(fq, d.rep);
      const uint64_t tr = fq.sub(cp.trace, e);
      const uint64_t nm = fq.div(cp.det, e);
      Mat2 kappa;  // companion form of x^2 - (tr/e) x + nm/e^2
      kappa.e = {0, fq.neg(fq.div(nm, fq.mul(e, e))), 1, fq.div(tr, e)};
      const uint64_t p = h.tower.p;
      Rat c = Rat((big_pow(BigInt(q), 3) - 1) * (BigInt(q) * q - 1)) /
              Rat(BigInt(p - 1) * (p * p - 1));
      out.value = c * horocycle_transform(h, f, kappa);
      out.hf_inputs.push_back(kappa);
      return out;
    }
    case ClassKind::EllCubic:
      return cubic_entry_formula(h, f, d.params[0]);
  }
  throw Error("unreachable class kind");
}

Hyp2TotalConstants hyp2_total_constants(uint64_t p, unsigned n) {
  const BigInt pb(p);
  const BigInt qb = big_pow(pb, n);
  const Rat deg(qb * qb + qb + 1);
  const Rat qm1(qb - 1), pm1(pb - 1);
  // Everything below is the coefficient of the ordered-pair transform sum
  // (a, b outside {0, 1}, a != b); the two texts print different reductions
  // of the same ordered-triple expression.
  Hyp2TotalConstants out;
  out.main_text = deg / 6 * qm1 * qm1 * qm1 / (pm1 * pm1);
  out.appendix = deg / 6 * qm1 * qm1 * qm1 * qm1 / (pm1 * pm1 * pm1);
  // derived independently: weight (q-1)^3/(p-1)^3 per class, and exactly
  // p-1 ordered triples collapse onto each ordered pair
  out.weight = deg / 6 * (qm1 / pm1) * (qm1 / pm1) * (qm1 / pm1) * pm1;
  return out;
}

TraceContext TraceContext::build(uint64_t p, unsigned n,
                                 const std::vector<uint64_t>* poly_override,
                                 const std::string& delta_rule,
                                 uint64_t budget) {
  TraceContext ctx;
  ctx.tower = Tower::build(p, n, poly_override, delta_rule);
  ctx.h = HalfSpace::build(ctx.tower, budget);
  ctx.fq2 = build_quadratic_extension(ctx.tower.fq);
  ctx.cc_q = ConjClasses::build(ctx.tower.fq, ctx.fq2, ctx.tower.fq3);
  ctx.fp = Field::prime_field(p);
  ctx.fp2 = build_quadratic_extension(ctx.fp);
  ctx.fp3 = Field::extension(ctx.fp, 3);
  ctx.cc_p = ConjClasses::build(ctx.fp, ctx.fp2, ctx.fp3);
  ctx.scan = GroupScan::build(ctx.h, ctx.cc_q, budget);
  ctx.cosets = CosetSpace::build(ctx.h, p, budget);
  ctx.direct = DirectTrace::build(ctx.h, ctx.cosets, budget);

  const BigInt g_order = gl3_order(BigInt(ctx.tower.q));
  const BigInt sub_order = gl3_order(BigInt(p));
  BigInt census = 0;
  for (const auto& cls : ctx.cc_p.classes) {
    // subgroup reps have entry codes below p, hence are valid over F_q
    int32_t gid = ctx.cc_q.classify(ctx.tower.fq, cls.rep);
    ctx.g_class_of.push_back(gid);
    OrbitProjection pr = OrbitProjection::build(ctx.h, cls.rep, budget);
    if (BigInt(pr.class_size) != ctx.cc_q.classes[gid].size)
      throw Error("closure size disagrees with the closed class size for " +
                  ctx.cc_q.classes[gid].label(ctx.tower.fq));
    BigInt gamma_size =
        ctx.cosets.full_group
            ? BigInt(pr.class_size)
            : BigInt(conjugation_orbit(ctx.fp, cls.rep, budget).size());
    if (gamma_size != cls.size)
      throw Error("subgroup closure size disagrees for " +
                  cls.label(ctx.fp));
    census += gamma_size;
    ctx.subgroup_class_size.push_back(gamma_size);
    ctx.projection.push_back(std::move(pr));
    // weight |G_gamma| / |Gamma_gamma|, both factors from closure sizes
    ctx.weight.push_back(Rat(g_order / ctx.cc_q.classes[gid].size) /
                         Rat(sub_order / gamma_size));
  }
  if (census != sub_order)
    throw Error("subgroup classes do not partition the subgroup");
  return ctx;
}

GeometricSide geometric_side(const TraceContext& ctx, const SphericalFn& f) {
  GeometricSide side;
  side.oracle_total = 0;
  side.closed_total = 0;
  side.oracles_agree = true;
  side.closed_complete = true;

  const BigInt g_order = gl3_order(BigInt(ctx.tower.q));
  const BigInt sub_order = gl3_order(BigInt(ctx.tower.p));

  for (size_t i = 0; i < ctx.cc_p.classes.size(); ++i) {
    const auto& gcls = ctx.cc_q.classes[static_cast<size_t>(ctx.g_class_of[i])];
    GeomRow row;
    row.gamma_label = ctx.cc_p.classes[i].label(ctx.fp);
    row.g_label = gcls.label(ctx.tower.fq);
    row.kind = gcls.kind;
    row.gamma_class_size = ctx.subgroup_class_size[i];
    row.g_class_size = BigInt(ctx.projection[i].class_size);
    row.weight = ctx.weight[i];
    row.centralizers_match_closed =
        gcls.centralizer_order == g_order / row.g_class_size &&
        ctx.cc_p.classes[i].centralizer_order ==
            sub_order / row.gamma_class_size;
    row.oracle = ctx.projection[i].sum(f);
    row.oracle_scan = ctx.scan.orbital_sum(f, ctx.g_class_of[i]);
    if (row.oracle != row.oracle_scan) side.oracles_agree = false;
    try {
      ClosedOrbital co = orbital_sum_closed(ctx.h, f, gcls);
      row.has_closed = true;
      row.closed = co.value;
      row.closed_undefined_terms = co.undefined_terms;
      row.closed_matches = (co.value == row.oracle);
    } catch (const WrongBranchError&) {
      row.has_closed = false;
      side.closed_complete = false;
    }
    side.oracle_total += row.weight * row.oracle;
    if (row.has_closed) side.closed_total += row.weight * row.closed;
    side.rows.push_back(std::move(row));
  }

  side.direct = ctx.direct.eval(f);
  side.identity_ok = (side.oracle_total == side.direct);
  return side;
}

}  // namespace gl3trace
