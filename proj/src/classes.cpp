#include "gl3trace/classes.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <unordered_set>

namespace gl3trace {

const char* class_kind_name(ClassKind k) {
  switch (k) {
    case ClassKind::Central: return "central";
    case ClassKind::Hyp1: return "hyp1";
    case ClassKind::Hyp2: return "hyp2";
    case ClassKind::Par1: return "par1";
    case ClassKind::Par2: return "par2";
    case ClassKind::Par3: return "par3";
    case ClassKind::EllQuadScalar: return "ell_quad_scalar";
    case ClassKind::EllCubic: return "ell_cubic";
  }
  return "?";
}

std::string ClassDescriptor::label(const Field&) const {
  std::string s = class_kind_name(kind);
  for (uint64_t v : params) s += "_" + std::to_string(v);
  return s;
}

Field build_quadratic_extension(const Field& fq) { return Field::extension(fq, 2); }

namespace {

// roots of x^3 - t x^2 + s x - d with multiplicity, by evaluation plus
// synthetic division
struct CubicRoots {
  std::vector<std::pair<uint64_t, int>> roots;  // (root, multiplicity)
};

CubicRoots cubic_roots(const Field& f, uint64_t t, uint64_t s, uint64_t d) {
  CubicRoots out;
  // coefficients low-to-high of x^3 - t x^2 + s x - d
  std::vector<uint64_t> c = {f.neg(d), s, f.neg(t), 1};
  for (uint64_t a = 0; a < f.q(); ++a) {
    if (c.size() <= 1) break;
    // divide out (x - a) as often as a is a root of the remaining factor
    while (c.size() > 1) {
      uint64_t v = 0;
      for (size_t i = c.size(); i-- > 0;) v = f.add(f.mul(v, a), c[i]);
      if (v != 0) break;
      std::vector<uint64_t> g(c.size() - 1);
      g.back() = c.back();
      for (size_t i = c.size() - 2; i >= 1; --i)
        g[i - 1] = f.add(c[i], f.mul(a, g[i]));
      c = std::move(g);
      bool found = false;
      for (auto& rm : out.roots)
        if (rm.first == a) {
          ++rm.second;
          found = true;
        }
      if (!found) out.roots.push_back({a, 1});
    }
  }
  return out;
}

}  // namespace

ConjClasses ConjClasses::build(const Field& fq, const Field& fq2, const Field& fq3) {
  if (fq2.base() == nullptr || fq2.base()->q() != fq.q() || fq2.ext_degree() != 2)
    throw LevelMismatchError("quadratic level does not extend the base field");
  if (fq3.base() == nullptr || fq3.base()->q() != fq.q() || fq3.ext_degree() != 3)
    throw LevelMismatchError("cubic level does not extend the base field");
  uint64_t q = fq.q();
  ConjClasses cc;
  cc.q = q;
  BigInt G = gl3_order(q);

  auto push = [&](ClassKind kind, std::vector<uint64_t> params, Mat3 rep,
                  BigInt cz) {
    ClassDescriptor d;
    d.kind = kind;
    d.params = std::move(params);
    d.rep = rep;
    d.centralizer_order = cz;
    if (G % cz != 0) throw Error("centralizer order does not divide group order");
    d.size = G / cz;
    cc.classes.push_back(std::move(d));
  };

  BigInt Q(static_cast<unsigned long>(q));
  BigInt cz_central = G;
  BigInt cz_hyp1 = (Q * Q - 1) * (Q * Q - Q) * (Q - 1);
  BigInt cz_hyp2 = (Q - 1) * (Q - 1) * (Q - 1);
  BigInt cz_par1 = Q * Q * Q * (Q - 1) * (Q - 1);
  BigInt cz_par2 = Q * Q * (Q - 1);
  BigInt cz_par3 = Q * (Q - 1) * (Q - 1);
  BigInt cz_quad_scalar = (Q * Q - 1) * (Q - 1);
  BigInt cz_cubic = Q * Q * Q - 1;

  std::map<std::vector<uint64_t>, int32_t> by_params[8];
  auto reg = [&](ClassKind kind) {
    by_params[static_cast<int>(kind)][cc.classes.back().params] =
        static_cast<int32_t>(cc.classes.size() - 1);
  };

  for (uint64_t a = 1; a < q; ++a) {
    push(ClassKind::Central, {a}, mat3_scalar(a), cz_central);
    reg(ClassKind::Central);
  }
  for (uint64_t a = 1; a < q; ++a)
    for (uint64_t b = 1; b < q; ++b) {
      if (a == b) continue;
      push(ClassKind::Hyp1, {a, b}, mat3_diag(a, a, b), cz_hyp1);
      reg(ClassKind::Hyp1);
    }
  for (uint64_t a = 1; a < q; ++a)
    for (uint64_t b = a + 1; b < q; ++b)
      for (uint64_t c = b + 1; c < q; ++c) {
        push(ClassKind::Hyp2, {a, b, c}, mat3_diag(a, b, c), cz_hyp2);
        reg(ClassKind::Hyp2);
      }
  // Parabolic representatives carry the eigenvalue itself (not 1) in the
  // off-diagonal slots, and the mixed type is lower triangular; the
  // fundamental-domain machinery depends on these exact shapes because the
  // orbit structure of the centralizer is shape-sensitive.
  for (uint64_t a = 1; a < q; ++a) {
    Mat3 m = mat3_scalar(a);
    m.at(0, 2) = a;
    push(ClassKind::Par1, {a}, m, cz_par1);
    reg(ClassKind::Par1);
  }
  for (uint64_t a = 1; a < q; ++a) {
    Mat3 m = mat3_scalar(a);
    m.at(0, 1) = a;
    m.at(1, 2) = a;
    push(ClassKind::Par2, {a}, m, cz_par2);
    reg(ClassKind::Par2);
  }
  for (uint64_t a = 1; a < q; ++a)
    for (uint64_t b = 1; b < q; ++b) {
      if (a == b) continue;
      Mat3 m = mat3_diag(a, a, b);
      m.at(1, 0) = a;
      push(ClassKind::Par3, {a, b}, m, cz_par3);
      reg(ClassKind::Par3);
    }

  // quadratic eigenvalue orbits: eta not in F_q, orbit {eta, eta^q},
  // minimal polynomial x^2 - tr x + nm with tr = eta + eta^q, nm = eta^(1+q)
  std::map<uint64_t, uint64_t> quad_min;  // (tr, nm) key -> minimal eta
  {
    uint64_t q2 = fq2.q();
    for (uint64_t eta = 0; eta < q2; ++eta) {
      uint64_t conj = fq2.pow(eta, q);
      if (conj == eta) continue;
      uint64_t tr = fq2.add(eta, conj), nm = fq2.mul(eta, conj);
      if (tr >= q || nm >= q) throw Error("trace or norm left the base field");
      uint64_t key = tr * q + nm;
      auto it = quad_min.find(key);
      if (it == quad_min.end() || eta < it->second) quad_min[key] = eta;
    }
  }
  for (auto [key, eta] : quad_min) {
    uint64_t tr = key / q, nm = key % q;
    if (nm == 0) throw Error("irreducible quadratic with zero norm");
    Mat3 block;
    if (q % 2 == 1) {
      // odd q: write the pair {eta, eta^q} as k +- l sqrt(xi) with xi the
      // field generator (a nonsquare since it generates a group of even
      // order); block = [[k, l xi], [l, k]].  The pair is irrational, so
      // the discriminant k^2 - nm is a nonsquare and l exists.
      uint64_t k = fq.div(tr, 2 % q);
      uint64_t xi = fq.generator();
      uint64_t l2 = fq.div(fq.sub(fq.mul(k, k), nm), xi);
      uint64_t l = fq.exp(fq.log(l2) / 2);
      if (fq.mul(l, l) != l2) throw Error("square root of discriminant missing");
      uint64_t ln = fq.neg(l);
      if (fq.rank(ln) < fq.rank(l)) l = ln;
      block.at(0, 0) = k;
      block.at(0, 1) = fq.mul(l, xi);
      block.at(1, 0) = l;
      block.at(1, 1) = k;
    } else {
      // even q has no nonsquares; fall back to the companion block
      block.at(0, 1) = fq.neg(nm);
      block.at(1, 0) = 1;
      block.at(1, 1) = tr;
    }
    for (uint64_t e = 1; e < q; ++e) {
      Mat3 m = block;
      m.at(2, 2) = e;
      push(ClassKind::EllQuadScalar, {eta, e}, m, cz_quad_scalar);
      reg(ClassKind::EllQuadScalar);
    }
  }

  // cubic eigenvalue orbits: xi not in F_q, orbit of size 3; characteristic
  // polynomial from the elementary symmetric functions of the orbit
  std::map<uint64_t, uint64_t> cubic_min;  // charpoly key -> minimal xi
  {
    uint64_t q3 = fq3.q();
    for (uint64_t xi = 0; xi < q3; ++xi) {
      uint64_t c1 = fq3.pow(xi, q);
      if (c1 == xi) continue;
      uint64_t c2 = fq3.pow(c1, q);
      uint64_t e1 = fq3.add(fq3.add(xi, c1), c2);
      uint64_t e2 = fq3.add(fq3.add(fq3.mul(xi, c1), fq3.mul(xi, c2)), fq3.mul(c1, c2));
      uint64_t e3 = fq3.mul(fq3.mul(xi, c1), c2);
      if (e1 >= q || e2 >= q || e3 >= q) throw Error("symmetric function left the base field");
      uint64_t key = (e1 * q + e2) * q + e3;
      auto it = cubic_min.find(key);
      if (it == cubic_min.end() || xi < it->second) cubic_min[key] = xi;
    }
  }
  for (auto [key, xi] : cubic_min) {
    uint64_t e3 = key % q, e2 = (key / q) % q, e1 = key / (q * q);
    if (e3 == 0) throw Error("irreducible cubic with zero norm");
    Mat3 m;
    m.at(0, 2) = e3;
    m.at(1, 0) = 1;
    m.at(1, 2) = fq.neg(e2);
    m.at(2, 1) = 1;
    m.at(2, 2) = e1;
    push(ClassKind::EllCubic, {xi}, m, cz_cubic);
    reg(ClassKind::EllCubic);
  }

  // classification tables over charpoly keys
  uint64_t nkeys = q * q * q;
  cc.unique_id.assign(nkeys, -2);
  cc.by_rank.assign(nkeys, {-2, -2, -2});
  cc.multi_root.assign(nkeys, 0);
  auto id_of = [&](ClassKind kind, std::vector<uint64_t> params) {
    auto& m = by_params[static_cast<int>(kind)];
    auto it = m.find(params);
    if (it == m.end()) throw Error("missing class for parameters");
    return it->second;
  };
  for (uint64_t t = 0; t < q; ++t)
    for (uint64_t s = 0; s < q; ++s)
      for (uint64_t d = 1; d < q; ++d) {
        uint64_t key = (t * q + s) * q + d;
        CubicRoots rr = cubic_roots(fq, t, s, d);
        int total = 0;
        for (auto [a, m] : rr.roots) total += m;
        if (rr.roots.size() == 3) {
          std::vector<uint64_t> abc = {rr.roots[0].first, rr.roots[1].first,
                                       rr.roots[2].first};
          std::sort(abc.begin(), abc.end());
          cc.unique_id[key] = id_of(ClassKind::Hyp2, abc);
        } else if (rr.roots.size() == 2) {
          uint64_t dbl = rr.roots[0].second == 2 ? rr.roots[0].first : rr.roots[1].first;
          uint64_t simp = rr.roots[0].second == 2 ? rr.roots[1].first : rr.roots[0].first;
          cc.unique_id[key] = -1;
          cc.multi_root[key] = static_cast<uint32_t>(dbl);
          cc.by_rank[key] = {-2, id_of(ClassKind::Hyp1, {dbl, simp}),
                             id_of(ClassKind::Par3, {dbl, simp})};
        } else if (rr.roots.size() == 1 && total == 3) {
          uint64_t a = rr.roots[0].first;
          cc.unique_id[key] = -1;
          cc.multi_root[key] = static_cast<uint32_t>(a);
          cc.by_rank[key] = {id_of(ClassKind::Central, {a}),
                             id_of(ClassKind::Par1, {a}),
                             id_of(ClassKind::Par2, {a})};
        } else if (rr.roots.size() == 1) {
          // simple rational root e, remaining irreducible quadratic
          uint64_t e = rr.roots[0].first;
          // x^3 - t x^2 + s x - d = (x - e)(x^2 - tr x + nm)
          uint64_t tr = fq.sub(t, e);
          uint64_t nm = fq.div(d, e);
          auto it = quad_min.find(tr * q + nm);
          if (it == quad_min.end()) throw Error("missing quadratic orbit");
          cc.unique_id[key] = id_of(ClassKind::EllQuadScalar, {it->second, e});
        } else {
          auto it = cubic_min.find(key);
          if (it == cubic_min.end()) throw Error("missing cubic orbit");
          cc.unique_id[key] = id_of(ClassKind::EllCubic, {it->second});
        }
      }

  // global consistency: class equation
  BigInt total = 0;
  for (const auto& d : cc.classes) total += d.size;
  if (total != G) throw Error("class sizes do not sum to the group order");
  return cc;
}

int32_t ConjClasses::classify(const Field& f, const Mat3& m) const {
  CharPoly3 cp = charpoly(f, m);
  if (cp.det == 0) throw SingularError("classify needs an invertible matrix");
  uint64_t key = charpoly_key(f, cp);
  int32_t id = unique_id[key];
  if (id >= 0) return id;
  if (id == -2) throw Error("invalid charpoly key");
  uint64_t a = multi_root[key];
  Mat3 shifted = m;
  for (int i = 0; i < 3; ++i)
    shifted.at(i, i) = f.sub(shifted.at(i, i), a);
  unsigned r = mat_rank(f, shifted);
  int32_t out = by_rank[key][r];
  if (out < 0) throw Error("rank inconsistent with charpoly");
  return out;
}

std::vector<uint64_t> conjugation_orbit(const Field& f, const Mat3& m,
                                        uint64_t budget) {
  auto gens = gl3_generators(f);
  std::vector<Mat3> gi;
  for (const auto& g : gens) gi.push_back(inv(f, g));
  std::unordered_set<uint64_t> seen;
  std::queue<Mat3> todo;
  seen.insert(mat3_code(f, m));
  todo.push(m);
  while (!todo.empty()) {
    Mat3 cur = todo.front();
    todo.pop();
    for (size_t i = 0; i < gens.size(); ++i) {
      Mat3 nxt = mmul(f, mmul(f, gens[i], cur), gi[i]);
      if (seen.insert(mat3_code(f, nxt)).second) {
        if (seen.size() > budget)
          throw BudgetExceededError("conjugation orbit exceeds budget");
        todo.push(nxt);
      }
    }
  }
  std::vector<uint64_t> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

BigInt centralizer_order_scan(const Field& f, const Mat3& m) {
  uint64_t q = f.q();
  if (q > 5) throw BudgetExceededError("centralizer scan only for tiny fields");
  uint64_t codes = 1;
  for (int i = 0; i < 9; ++i) codes *= q;
  BigInt count = 0;
  for (uint64_t c = 0; c < codes; ++c) {
    Mat3 g = mat3_from_code(f, c);
    if (det(f, g) == 0) continue;
    if (mmul(f, g, m) == mmul(f, m, g)) ++count;
  }
  return count;
}

std::vector<Mat3> commutant_basis(const Field& f, const Mat3& m) {
  // Unknown X vectorized as x[3k + l] = X_{kl}; equation (i, j) reads
  // (mX - Xm)_{ij} = 0, so the coefficient of X_{kl} is
  // m_{ik} [l == j] - [k == i] m_{lj}.
  uint64_t a[9][9];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          uint64_t v = 0;
          if (l == j) v = m.at(i, k);
          if (k == i) v = f.sub(v, m.at(l, j));
          a[3 * i + j][3 * k + l] = v;
        }

  int pivot_row_of_col[9];
  for (int c = 0; c < 9; ++c) pivot_row_of_col[c] = -1;
  int rank = 0;
  for (int col = 0; col < 9 && rank < 9; ++col) {
    int pr = -1;
    for (int r = rank; r < 9; ++r)
      if (a[r][col] != 0) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    for (int c = 0; c < 9; ++c) std::swap(a[rank][c], a[pr][c]);
    uint64_t s = f.inv(a[rank][col]);
    for (int c = 0; c < 9; ++c) a[rank][c] = f.mul(a[rank][c], s);
    for (int r = 0; r < 9; ++r) {
      if (r == rank || a[r][col] == 0) continue;
      uint64_t t = a[r][col];
      for (int c = 0; c < 9; ++c)
        a[r][c] = f.sub(a[r][c], f.mul(t, a[rank][c]));
    }
    pivot_row_of_col[col] = rank;
    ++rank;
  }

  std::vector<Mat3> basis;
  for (int fc = 0; fc < 9; ++fc) {
    if (pivot_row_of_col[fc] >= 0) continue;
    Mat3 b;
    b.e[fc] = 1;
    for (int pc = 0; pc < 9; ++pc) {
      int r = pivot_row_of_col[pc];
      if (r >= 0) b.e[pc] = f.neg(a[r][fc]);
    }
    if (!(mmul(f, m, b) == mmul(f, b, m)))
      throw Error("commutant solve produced a non-commuting matrix");
    basis.push_back(b);
  }
  return basis;
}

std::vector<Mat3> centralizer_elements(const Field& f, const Mat3& m,
                                       uint64_t budget) {
  auto basis = commutant_basis(f, m);
  uint64_t q = f.q(), span = 1;
  for (size_t i = 0; i < basis.size(); ++i) {
    if (span > budget / q)
      throw BudgetExceededError("centralizer span exceeds budget");
    span *= q;
  }
  std::vector<Mat3> out;
  for (uint64_t c = 0; c < span; ++c) {
    uint64_t v = c;
    Mat3 x;
    for (size_t i = 0; i < basis.size(); ++i) {
      uint64_t ci = v % q;
      v /= q;
      if (ci == 0) continue;
      for (int e = 0; e < 9; ++e)
        x.e[e] = f.add(x.e[e], f.mul(ci, basis[i].e[e]));
    }
    if (det(f, x) != 0) out.push_back(x);
  }
  return out;
}

}  // namespace gl3trace
