#include "gl3trace/spectral.hpp"

#include <numeric>
#include <vector>

#include "gl3trace/errors.hpp"

namespace gl3trace {

ClassSizeConstants ClassSizeConstants::at(const BigInt& q) {
  BigInt G = gl3_order(q);
  auto sz = [&](const BigInt& cz) {
    if (G % cz != 0) throw Error("centralizer order does not divide group order");
    return G / cz;
  };
  ClassSizeConstants c;
  c.H1 = sz((q * q - 1) * (q * q - q) * (q - 1));
  c.H2 = sz((q - 1) * (q - 1) * (q - 1));
  c.P1 = sz(q * q * q * (q - 1) * (q - 1));
  c.P2 = sz(q * q * (q - 1));
  c.P3 = sz(q * (q - 1) * (q - 1));
  c.E1 = sz((q * q - 1) * (q - 1));
  c.E2 = sz(q * q * q - 1);
  return c;
}

Rat chi_rho(const Tower& t, const Field& fq2, const ClassDescriptor& d) {
  const uint64_t p = t.p;
  const unsigned n = t.n;
  const Field& fq = t.fq;
  const Field& fq3 = t.fq3;
  ClassSizeConstants sub = ClassSizeConstants::at(BigInt(static_cast<unsigned long>(p)));

  BigInt mass = 0;
  switch (d.kind) {
    case ClassKind::Central:
      if (d.params[0] < p) mass = 1;
      break;
    case ClassKind::Hyp1:
      // a double and a simple eigenvalue are each fixed by any permutation
      // of the multiset, so Galois stability forces both into the subfield
      if (d.params[0] < p && d.params[1] < p) mass = sub.H1;
      break;
    case ClassKind::Hyp2: {
      uint64_t a = d.params[0], b = d.params[1], c = d.params[2];
      int below = (a < p) + (b < p) + (c < p);
      if (below == 3) {
        mass = sub.H2;
      } else if (below == 0 && n % 3 == 0) {
        // full cubic Galois orbit; no fixed points, so x -> x^p must
        // permute the three eigenvalues in a 3-cycle
        uint64_t fa = fq.frob(a), fb = fq.frob(b), fc = fq.frob(c);
        auto in_set = [&](uint64_t x) { return x == a || x == b || x == c; };
        if (in_set(fa) && in_set(fb) && in_set(fc)) mass = sub.E2;
      } else if (below == 1 && n % 2 == 0) {
        // one rational eigenvalue plus a quadratic Galois pair
        uint64_t y, z;
        if (a < p) { y = b; z = c; }
        else if (b < p) { y = a; z = c; }
        else { y = a; z = b; }
        if (fq.frob(y) == z && fq.frob(z) == y) mass = sub.E1;
      }
      break;
    }
    case ClassKind::Par1:
      if (d.params[0] < p) mass = sub.P1;
      break;
    case ClassKind::Par2:
      if (d.params[0] < p) mass = sub.P2;
      break;
    case ClassKind::Par3:
      if (d.params[0] < p && d.params[1] < p) mass = sub.P3;
      break;
    case ClassKind::EllQuadScalar: {
      // with 2 | n the quadratic subfield sits inside the base field and no
      // eigenvalue pair irrational over it can come from a subgroup matrix
      if (n % 2 == 0) break;
      uint64_t eta = d.params[0], e = d.params[1];
      if (e < p && fq2.in_subfield(eta, 2) && !fq2.in_subfield(eta, 1))
        mass = sub.E1;
      break;
    }
    case ClassKind::EllCubic: {
      if (n % 3 == 0) break;
      uint64_t xi = d.params[0];
      if (fq3.in_subfield(xi, 3) && !fq3.in_subfield(xi, 1)) mass = sub.E2;
      break;
    }
  }

  BigInt Gq = gl3_order(BigInt(static_cast<unsigned long>(t.q)));
  BigInt Gp = gl3_order(BigInt(static_cast<unsigned long>(p)));
  Rat chi(Gq * mass);
  chi /= Rat(Gp * d.size);
  return chi;
}

BigInt induced_char_gamma_oracle(const HalfSpace& h, const CosetSpace& cs,
                                 const Mat3& g) {
  const Field& fq = h.tower.fq;
  const uint64_t p = h.tower.p;
  BigInt fixed = 0;
  for (size_t i = 0; i < cs.reps.size(); ++i) {
    // reps are right-coset representatives, so the coset Gx is fixed under
    // right translation by g exactly when x g x^-1 lands back in the
    // subgroup; the condition is constant on Gx because conjugating g by a
    // subgroup element keeps membership
    Mat3 conj = mmul(fq, cs.reps[i], mmul(fq, g, cs.rep_inv[i]));
    bool inside = true;
    for (uint64_t e : conj.e)
      if (e >= p) { inside = false; break; }
    if (inside) ++fixed;
  }
  return fixed;
}

BigInt induced_char_k_oracle(const HalfSpace& h, const Mat3& g) {
  BigInt fixed = 0;
  uint64_t span = h.q3 * h.q3;
  for (uint64_t code = 0; code < span; ++code) {
    if (h.point_index[code] == ~0u) continue;
    if (h.act(g, code) == code) ++fixed;
  }
  return fixed;
}

BigInt gamma_double_coset_count(const HalfSpace& h, const CosetSpace& cs,
                                uint64_t budget) {
  if (cs.full_group) return 1;
  const Field& fq = h.tower.fq;
  BigInt work = BigInt(static_cast<unsigned long>(cs.subgroup.size())) *
                BigInt(static_cast<unsigned long>(cs.reps.size()));
  if (work > BigInt(static_cast<unsigned long>(budget)))
    throw BudgetExceededError("double coset table needs " + work.get_str() +
                              " products, budget " + std::to_string(budget));

  // global element -> coset table, then closure under right translation by
  // subgroup generators; orbits are the double cosets
  uint64_t codes = 1;
  for (int i = 0; i < 9; ++i) codes *= h.q;
  std::vector<int32_t> coset_of(codes, -1);
  for (size_t i = 0; i < cs.reps.size(); ++i)
    for (const Mat3& gamma : cs.subgroup)
      coset_of[mat3_code(fq, mmul(fq, gamma, cs.reps[i]))] =
          static_cast<int32_t>(i);

  std::vector<Mat3> gens = gl3_generators(h.tower.fp);
  std::vector<char> seen(cs.reps.size(), 0);
  std::vector<uint32_t> stack;
  BigInt orbits = 0;
  for (size_t i = 0; i < cs.reps.size(); ++i) {
    if (seen[i]) continue;
    ++orbits;
    seen[i] = 1;
    stack.assign(1, static_cast<uint32_t>(i));
    while (!stack.empty()) {
      uint32_t cur = stack.back();
      stack.pop_back();
      for (const Mat3& g : gens) {
        int32_t nxt = coset_of[mat3_code(fq, mmul(fq, cs.reps[cur], g))];
        if (nxt < 0) throw Error("coset table is incomplete");
        if (!seen[nxt]) {
          seen[nxt] = 1;
          stack.push_back(static_cast<uint32_t>(nxt));
        }
      }
    }
  }
  return orbits;
}

BigInt gamma_orbit_count_on_halfspace(const HalfSpace& h) {
  std::vector<Mat3> gens = gl3_generators(h.tower.fp);
  std::vector<char> seen(h.num_points, 0);
  std::vector<uint64_t> stack;
  BigInt orbits = 0;
  uint64_t span = h.q3 * h.q3;
  for (uint64_t code = 0; code < span; ++code) {
    uint32_t idx = h.point_index[code];
    if (idx == ~0u || seen[idx]) continue;
    ++orbits;
    seen[idx] = 1;
    stack.assign(1, code);
    while (!stack.empty()) {
      uint64_t cur = stack.back();
      stack.pop_back();
      for (const Mat3& g : gens) {
        uint64_t nxt = h.act(g, cur);
        uint32_t ni = h.index_of(nxt);
        if (!seen[ni]) {
          seen[ni] = 1;
          stack.push_back(nxt);
        }
      }
    }
  }
  return orbits;
}

// ---- multiplicities ----

std::string irrep_family_name(IrrepFamily fam) {
  switch (fam) {
    case IrrepFamily::Alpha: return "alpha";
    case IrrepFamily::PiAlpha: return "pi_alpha";
    case IrrepFamily::PiAlphaPrime: return "pi_alpha_prime";
    case IrrepFamily::PiAb: return "pi_ab";
    case IrrepFamily::PiAbPrime: return "pi_ab_prime";
    case IrrepFamily::PiAbc: return "pi_abc";
    case IrrepFamily::RhoANu: return "rho_a_nu";
    case IrrepFamily::SigmaMu: return "sigma_mu";
  }
  throw Error("unknown irreducible family");
}

BigInt irrep_dimension(IrrepFamily fam, const BigInt& q) {
  switch (fam) {
    case IrrepFamily::Alpha: return 1;
    case IrrepFamily::PiAlpha: return q * q + q;
    case IrrepFamily::PiAlphaPrime: return q * q * q;
    case IrrepFamily::PiAb: return q * q + q + 1;
    case IrrepFamily::PiAbPrime: return q * (q * q + q + 1);
    case IrrepFamily::PiAbc: return (q + 1) * (q * q + q + 1);
    case IrrepFamily::RhoANu: return (q - 1) * (q * q + q + 1);
    case IrrepFamily::SigmaMu: return (q - 1) * (q - 1) * (q + 1);
  }
  throw Error("unknown irreducible family");
}

BigInt irrep_family_total(IrrepFamily fam, const BigInt& p, unsigned n) {
  BigInt q = big_pow(p, n);
  BigInt R = q - 1;
  switch (fam) {
    case IrrepFamily::Alpha:
    case IrrepFamily::PiAlpha:
    case IrrepFamily::PiAlphaPrime:
      return R;
    case IrrepFamily::PiAb:
    case IrrepFamily::PiAbPrime:
      return R * (R - 1);
    case IrrepFamily::PiAbc:
      return R * (R - 1) * (R - 2) / 6;
    case IrrepFamily::RhoANu:
      return R * count_chars("nu_orbits", p, n);
    case IrrepFamily::SigmaMu:
      return count_chars("mu_orbits", p, n);
  }
  throw Error("unknown irreducible family");
}

unsigned family_case_count(IrrepFamily fam) {
  switch (fam) {
    case IrrepFamily::Alpha:
    case IrrepFamily::PiAlpha:
    case IrrepFamily::PiAlphaPrime:
    case IrrepFamily::SigmaMu:
      return 3;
    default:
      return 4;
  }
}

std::string irrep_case_condition(IrrepFamily fam, unsigned case_id) {
  switch (fam) {
    case IrrepFamily::Alpha:
    case IrrepFamily::PiAlpha:
    case IrrepFamily::PiAlphaPrime:
      switch (case_id) {
        case 0: return "cube restricts nontrivially";
        case 1: return "cube trivial, character nontrivial";
        case 2: return "character restricts trivially";
      }
      break;
    case IrrepFamily::PiAb:
    case IrrepFamily::PiAbPrime:
      switch (case_id) {
        case 0: return "alpha^2 beta restricts nontrivially";
        case 1: return "alpha^2 beta trivial, alpha^2 and beta nontrivial";
        case 2: return "alpha^2 and beta trivial, alpha nontrivial";
        case 3: return "alpha and beta restrict trivially";
      }
      break;
    case IrrepFamily::PiAbc:
      switch (case_id) {
        case 0: return "product restricts nontrivially";
        case 1: return "product trivial, no factor trivial";
        case 2: return "exactly one factor trivial";
        case 3: return "all three factors trivial";
      }
      break;
    case IrrepFamily::RhoANu:
      switch (case_id) {
        case 0: return "alpha nu restricts nontrivially";
        case 1: return "alpha nu trivial, alpha and nu nontrivial";
        case 2: return "alpha trivial, nu trivial on the prime field only";
        case 3: return "alpha trivial, nu trivial on the quadratic subfield";
      }
      break;
    case IrrepFamily::SigmaMu:
      switch (case_id) {
        case 0: return "mu restricts nontrivially";
        case 1: return "mu trivial on the prime field only";
        case 2: return "mu trivial on the cubic subfield";
      }
      break;
  }
  throw Error("unknown case for family " + irrep_family_name(fam));
}

BigInt irrep_case_count(IrrepFamily fam, unsigned case_id, const BigInt& p,
                        unsigned n) {
  if (case_id >= family_case_count(fam))
    throw Error("unknown case for family " + irrep_family_name(fam));
  auto cc = [&](const char* cond) { return count_chars(cond, p, n); };
  switch (fam) {
    case IrrepFamily::Alpha:
    case IrrepFamily::PiAlpha:
    case IrrepFamily::PiAlphaPrime:
      switch (case_id) {
        case 0: return cc("alpha_cube_nontrivial");
        case 1: return cc("alpha_cube_trivial_only");
        default: return cc("alpha_trivial");
      }
    case IrrepFamily::PiAb:
    case IrrepFamily::PiAbPrime:
      switch (case_id) {
        case 0:
          return irrep_family_total(fam, p, n) - cc("pair_case1") -
                 cc("pair_case2") - cc("pair_case3");
        case 1: return cc("pair_case1");
        case 2: return cc("pair_case2");
        default: return cc("pair_case3");
      }
    case IrrepFamily::PiAbc:
      switch (case_id) {
        case 0:
          return irrep_family_total(fam, p, n) - cc("triple_case1") -
                 cc("triple_case2") - cc("triple_case3");
        case 1: return cc("triple_case1");
        case 2: return cc("triple_case2");
        default: return cc("triple_case3");
      }
    case IrrepFamily::RhoANu:
      switch (case_id) {
        case 0:
          return irrep_family_total(fam, p, n) - cc("nu_case1") -
                 cc("nu_case2") - cc("nu_case3");
        case 1: return cc("nu_case1");
        case 2: return cc("nu_case2");
        default: return cc("nu_case3");
      }
    case IrrepFamily::SigmaMu:
      switch (case_id) {
        case 0: return cc("mu_case0");
        case 1: return cc("mu_case1");
        default: return cc("mu_case2");
      }
  }
  throw Error("unknown irreducible family");
}

Rat multiplicity(IrrepFamily fam, unsigned case_id, const BigInt& p,
                 unsigned n) {
  if (std::gcd(static_cast<unsigned long>(n), 6ul) != 1)
    throw UnsupportedRegimeError(
        "multiplicity closed forms cover tower degrees coprime to 6, got " +
        std::to_string(n));
  if (case_id >= family_case_count(fam))
    throw Error("unknown case for family " + irrep_family_name(fam));
  if (case_id == 0) return Rat(0);

  BigInt Q = big_pow(p, n);
  BigInt P2 = p * p, P3 = P2 * p, P4 = P3 * p, P5 = P4 * p;
  BigInt D = P3 * (p - 1) * (p - 1) * (p + 1) * (P2 + p + 1);
  BigInt num;
  switch (fam) {
    case IrrepFamily::Alpha:
      // the middle case collapses to zero after the class sums cancel
      num = (case_id == 1) ? BigInt(0) : D;
      break;
    case IrrepFamily::PiAlpha:
      if (case_id == 1)
        num = (Q - p) * (Q - P2);
      else
        num = (Q - p) * (Q + P5 - 2 * P2);
      break;
    case IrrepFamily::PiAlphaPrime:
      if (case_id == 1)
        num = (Q - p) * (Q - P2) * (Q + P2 + p);
      else
        num = (Q - p) * (Q * Q + p * Q + P5 - P4 - P3 - P2);
      break;
    case IrrepFamily::PiAb:
      if (case_id == 3)
        num = Q * (Q + P5 - 2 * P2 - p) + P3 * (P5 - 2 * P3 - P2 + 3);
      else
        num = (Q - p) * (Q - P2);
      break;
    case IrrepFamily::PiAbPrime:
      if (case_id == 1)
        num = (Q - p) * (Q - P2) * (Q + P2 + p + 1);
      else if (case_id == 2)
        num = (Q - p) * (Q * (Q + p + 1) + P2 * (P3 - P2 - p - 2));
      else
        num = (Q - p) * (Q * (Q + p + 1) + P2 * (2 * p - 3) * (P2 + p + 1));
      break;
    case IrrepFamily::PiAbc:
      if (case_id == 1)
        num = (Q - p) * (Q - P2) * (Q + P2 + p + 2);
      else if (case_id == 2)
        num = (Q - p) * (Q * (Q + p + 2) + P2 * (P3 - P2 - p - 3));
      else
        num = Q * (Q * Q + 2 * Q + 3 * P5 - P4 - P3 - 6 * P2 - 2 * p) +
              P3 * (P5 - 4 * P3 + p + 6);
      break;
    case IrrepFamily::RhoANu:
      if (case_id == 1)
        num = (Q - p) * (Q - P2) * (Q + P2 + p);
      else if (case_id == 2)
        num = (Q - p) * (Q * (Q + p) + P2 * (P3 - P2 - p - 1));
      else
        num = Q * (Q * Q + P5 - P4 - P3 - 2 * P2) +
              P4 * (-P4 + 2 * p + 1);
      break;
    case IrrepFamily::SigmaMu:
      if (case_id == 1)
        num = (Q - p) * (Q - P2) * (Q + P2 + p - 1);
      else
        num = Q * (Q * Q - Q - P4 - P3 + p) + P4 * (P4 - P2 + 1);
      break;
  }
  Rat m(num);
  m /= Rat(D);
  return m;
}

MultiplicityReport multiplicity_report(const BigInt& p, unsigned n) {
  MultiplicityReport rep;
  rep.p = p;
  rep.q = big_pow(p, n);
  rep.n = n;
  for (IrrepFamily fam :
       {IrrepFamily::Alpha, IrrepFamily::PiAlpha, IrrepFamily::PiAlphaPrime,
        IrrepFamily::PiAb, IrrepFamily::PiAbPrime, IrrepFamily::PiAbc,
        IrrepFamily::RhoANu, IrrepFamily::SigmaMu}) {
    for (unsigned c = 0; c < family_case_count(fam); ++c) {
      MultiplicityRow row;
      row.family = fam;
      row.case_id = c;
      row.condition = irrep_case_condition(fam, c);
      row.count = irrep_case_count(fam, c, p, n);
      row.dimension = irrep_dimension(fam, rep.q);
      row.m = multiplicity(fam, c, p, n);
      row.is_integer = row.m.get_den() == 1;
      row.is_nonnegative = row.m >= 0;
      if (row.count > 0 && !(row.is_integer && row.is_nonnegative))
        rep.all_populated_integral = false;
      rep.rows.push_back(std::move(row));
    }
  }
  return rep;
}

SpectralChecksums spectral_checksums(const BigInt& p, unsigned n) {
  SpectralChecksums out;
  out.p = p;
  out.n = n;
  out.q = big_pow(p, n);
  out.group_order = gl3_order(out.q);
  out.class_number = out.q * out.q * out.q - out.q;

  out.dual_size = 0;
  out.sum_count_dim2 = 0;
  for (IrrepFamily fam :
       {IrrepFamily::Alpha, IrrepFamily::PiAlpha, IrrepFamily::PiAlphaPrime,
        IrrepFamily::PiAb, IrrepFamily::PiAbPrime, IrrepFamily::PiAbc,
        IrrepFamily::RhoANu, IrrepFamily::SigmaMu}) {
    BigInt total = irrep_family_total(fam, p, n);
    BigInt dim = irrep_dimension(fam, out.q);
    out.dual_size += total;
    out.sum_count_dim2 += total * dim * dim;
  }
  out.dual_ok = out.dual_size == out.class_number &&
                out.sum_count_dim2 == out.group_order;

  out.regime_supported = std::gcd(static_cast<unsigned long>(n), 6ul) == 1;
  if (out.regime_supported) {
    BigInt sub_order = gl3_order(p);
    if (out.group_order % sub_order != 0)
      throw Error("subgroup order does not divide group order");
    out.index = out.group_order / sub_order;
    MultiplicityReport rep = multiplicity_report(p, n);
    out.sum_m_dim = 0;
    out.sum_m_sq = 0;
    for (const MultiplicityRow& row : rep.rows) {
      Rat weight(row.count);
      out.sum_m_dim += weight * row.m * Rat(row.dimension);
      out.sum_m_sq += weight * row.m * row.m;
    }
    out.index_ok = out.sum_m_dim == Rat(out.index);
  }
  return out;
}

ConstantFunctionIdentity constant_function_identity(const TraceContext& ctx) {
  ConstantFunctionIdentity out;
  out.direct_total = ctx.direct.eval(SphericalFn::constant(ctx.h, Rat(1)));
  out.group_order = gl3_order(BigInt(static_cast<unsigned long>(ctx.tower.q)));
  out.matches = out.direct_total == Rat(out.group_order);
  return out;
}

BasePointMassIdentity base_point_mass_identity(const TraceContext& ctx) {
  BasePointMassIdentity out;
  BigInt stab_order = BigInt(static_cast<unsigned long>(ctx.h.q3)) - 1;
  out.oracle = ctx.direct.eval(SphericalFn::delta_p0(ctx.h)) / Rat(stab_order);
  out.oracle_integral = out.oracle.get_den() == 1;
  out.gamma_orbits = gamma_orbit_count_on_halfspace(ctx.h);
  out.orbit_count_matches = out.oracle == Rat(out.gamma_orbits);

  BigInt p(static_cast<unsigned long>(ctx.tower.p));
  BigInt q(static_cast<unsigned long>(ctx.tower.q));
  Rat main_term(q * q * q * (q * q - 1) * (q - 1));
  main_term /= Rat(p * p * p * (p * p - 1) * (p * p * p - 1));
  out.printed_main = main_term;
  out.printed_extra = 0;
  if (ctx.tower.n % 3 != 0) {
    Rat extra(q * q * q - q);
    extra /= Rat(p * p * p - 1);
    out.printed_extra = extra;
  }
  out.printed_total = out.printed_main + out.printed_extra;
  out.printed_matches = out.printed_total == out.oracle;
  return out;
}

}  // namespace gl3trace
