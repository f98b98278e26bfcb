#include "gl3trace/halfspace.hpp"

namespace gl3trace {

bool HalfSpace::contains(uint64_t alpha, uint64_t beta) const {
  const Field& fq = tower.fq;
  uint64_t a2 = (alpha / q) % q, a3 = alpha / (q * q);
  uint64_t b2 = (beta / q) % q, b3 = beta / (q * q);
  return fq.sub(fq.mul(a2, b3), fq.mul(a3, b2)) != 0;
}

uint32_t HalfSpace::index_of(uint64_t point) const {
  uint32_t idx = point_index[point];
  if (idx == ~0u) throw Error("point is not in the half-space");
  return idx;
}

uint64_t HalfSpace::act(const Mat3& g, uint64_t point) const {
  const Field& f3 = tower.fq3;
  uint64_t alpha = point / q3, beta = point % q3;
  uint64_t na = f3.add(f3.add(f3.mul(g.at(0, 0), alpha), f3.mul(g.at(0, 1), beta)), g.at(0, 2));
  uint64_t nb = f3.add(f3.add(f3.mul(g.at(1, 0), alpha), f3.mul(g.at(1, 1), beta)), g.at(1, 2));
  uint64_t den = f3.add(f3.add(f3.mul(g.at(2, 0), alpha), f3.mul(g.at(2, 1), beta)), g.at(2, 2));
  uint64_t di = f3.inv(den);  // throws on the impossible zero denominator
  return f3.mul(na, di) * q3 + f3.mul(nb, di);
}

Mat3 HalfSpace::affine_rep(uint64_t point) const {
  uint64_t alpha = point / q3, beta = point % q3;
  Mat3 m;
  m.at(0, 0) = alpha / (q * q);
  m.at(0, 1) = (alpha / q) % q;
  m.at(0, 2) = alpha % q;
  m.at(1, 0) = beta / (q * q);
  m.at(1, 1) = (beta / q) % q;
  m.at(1, 2) = beta % q;
  m.at(2, 2) = 1;
  return m;
}

uint64_t HalfSpace::rank_key(uint64_t point) const {
  const Field& fq = tower.fq;
  uint64_t alpha = point / q3, beta = point % q3;
  uint64_t coords[6] = {alpha % q,          (alpha / q) % q, alpha / (q * q),
                        beta % q,           (beta / q) % q,  beta / (q * q)};
  uint64_t key = 0;
  for (int i = 0; i < 6; ++i) key = (key << 6) | fq.rank(coords[i]);
  return key;
}

uint64_t HalfSpace::from_coords(const std::array<uint64_t, 3>& a,
                                const std::array<uint64_t, 3>& b) const {
  uint64_t alpha = a[0] + a[1] * q + a[2] * q * q;
  uint64_t beta = b[0] + b[1] * q + b[2] * q * q;
  return alpha * q3 + beta;
}

HalfSpace HalfSpace::build(const Tower& t, uint64_t budget) {
  HalfSpace h;
  h.tower = t;
  h.q = t.q;
  h.q3 = t.fq3.q();
  if (t.fq.q() >= 64) throw BudgetExceededError("rank keys need q < 64");
  if (h.q3 > budget / h.q3)
    throw BudgetExceededError("half-space enumeration exceeds budget");

  uint64_t codes = h.q3 * h.q3;
  h.point_index.assign(codes, ~0u);
  uint32_t next = 0;
  for (uint64_t alpha = 0; alpha < h.q3; ++alpha)
    for (uint64_t beta = 0; beta < h.q3; ++beta)
      if (h.contains(alpha, beta)) h.point_index[alpha * h.q3 + beta] = next++;
  h.num_points = next;
  BigInt expect = BigInt(static_cast<unsigned long>(h.q));
  expect = (expect * expect - 1) * (expect - 1) * expect * expect * expect;
  if (BigInt(static_cast<unsigned long>(next)) != expect)
    throw Error("half-space point count mismatch");

  h.p0 = h.pack(h.q * h.q, h.q);
  if (h.point_index[h.p0] == ~0u) throw Error("base point missing");

  // regular representation of the top-level generator: columns are the
  // coordinates of x, x t, x t^2 with t^3 = delta
  {
    const Field& fq = t.fq;
    uint64_t x = t.fq3.generator();
    uint64_t x1 = x % h.q, x2 = (x / h.q) % h.q, x3 = x / (h.q * h.q);
    Mat3 k;
    k.at(0, 0) = x1;
    k.at(1, 0) = x2;
    k.at(2, 0) = x3;
    k.at(0, 1) = fq.mul(t.delta, x3);
    k.at(1, 1) = x1;
    k.at(2, 1) = x2;
    k.at(0, 2) = fq.mul(t.delta, x2);
    k.at(1, 2) = fq.mul(t.delta, x3);
    k.at(2, 2) = x1;
    if (det(fq, k) == 0) throw Error("stabilizer generator is singular");
    h.k_gen = k;
  }
  if (h.act(h.k_gen, h.p0) != h.p0) throw Error("stabilizer generator moves the base point");

  // K-orbits: K is cyclic, so orbits are the cycles of one generator
  h.orbit_of.assign(h.num_points, ~0u);
  uint64_t kq = h.q3 - 1;  // |K|
  for (uint64_t alpha = 0; alpha < h.q3; ++alpha)
    for (uint64_t beta = 0; beta < h.q3; ++beta) {
      uint64_t start = alpha * h.q3 + beta;
      uint32_t idx = h.point_index[start];
      if (idx == ~0u || h.orbit_of[idx] != ~0u) continue;
      uint32_t orbit_id = static_cast<uint32_t>(h.orbit_reps.size());
      uint64_t cur = start;
      uint64_t best = h.rank_key(start), best_code = start;
      uint32_t size = 0;
      do {
        h.orbit_of[h.point_index[cur]] = orbit_id;
        ++size;
        uint64_t rk = h.rank_key(cur);
        if (rk < best) {
          best = rk;
          best_code = cur;
        }
        cur = h.act(h.k_gen, cur);
      } while (cur != start);
      if (kq % size != 0) throw Error("orbit size does not divide |K|");
      h.orbit_reps.push_back(best_code);
      h.orbit_sizes.push_back(size);
    }
  return h;
}

std::vector<uint64_t> fundamental_domain(const HalfSpace& h, ClassKind kind) {
  const Field& fq = h.tower.fq;
  const uint64_t q = h.q;
  std::vector<uint64_t> out;
  auto pt = [&](uint64_t a1, uint64_t a2, uint64_t a3, uint64_t b1,
                uint64_t b2, uint64_t b3) {
    out.push_back(h.from_coords({a1, a2, a3}, {b1, b2, b3}));
  };
  switch (kind) {
    case ClassKind::Central:
      // the full group is transitive, so any single point works
      out.push_back(h.p0);
      break;
    case ClassKind::Hyp1:
      // (u + t, v + t^2)
      for (uint64_t u = 0; u < q; ++u)
        for (uint64_t v = 0; v < q; ++v) pt(u, 1, 0, v, 0, 1);
      break;
    case ClassKind::Hyp2:
      // four pieces; the first needs ys != 1 to stay inside the half-space
      for (uint64_t x = 0; x < q; ++x)
        for (uint64_t y = 0; y < q; ++y)
          for (uint64_t r = 0; r < q; ++r)
            for (uint64_t s = 0; s < q; ++s)
              if (fq.mul(y, s) != 1) pt(x, 1, y, r, s, 1);
      for (uint64_t x = 0; x < q; ++x)
        for (uint64_t r = 0; r < q; ++r)
          for (uint64_t s = 1; s < q; ++s) pt(x, 0, 1, r, 1, s);
      for (uint64_t x = 0; x < q; ++x)
        for (uint64_t y = 1; y < q; ++y)
          for (uint64_t r = 0; r < q; ++r) pt(x, y, 1, r, 1, 0);
      for (uint64_t x = 0; x < q; ++x)
        for (uint64_t y = 0; y < q; ++y) pt(x, 0, 1, y, 1, 0);
      break;
    case ClassKind::Par1:
      // (u t, v t + t^2), u != 0, plus the line (t + u t^2, t), u != 0
      for (uint64_t u = 1; u < q; ++u)
        for (uint64_t v = 0; v < q; ++v) pt(0, u, 0, 0, v, 1);
      for (uint64_t u = 1; u < q; ++u) pt(0, 1, u, 0, 1, 0);
      break;
    case ClassKind::Par2:
      // claimed domain for the upper-triangular group: (t, v t + t^2)
      // together with the base point
      for (uint64_t v = 0; v < q; ++v) pt(0, 1, 0, 0, v, 1);
      out.push_back(h.p0);
      break;
    case ClassKind::Par3:
      for (uint64_t v = 0; v < q; ++v)
        for (uint64_t u = 0; u < q; ++u)
          for (uint64_t s = 0; s < q; ++s)
            for (uint64_t r = 1; r < q; ++r) pt(v, 1, u, s, 0, r);
      for (uint64_t v = 0; v < q; ++v)
        for (uint64_t s = 0; s < q; ++s)
          for (uint64_t r = 1; r < q; ++r) pt(v, 0, 1, s, r, 0);
      break;
    case ClassKind::EllQuadScalar:
      // (x + u t + v t^2, y + t), v != 0
      for (uint64_t x = 0; x < q; ++x)
        for (uint64_t u = 0; u < q; ++u)
          for (uint64_t v = 1; v < q; ++v)
            for (uint64_t y = 0; y < q; ++y) pt(x, u, v, y, 1, 0);
      break;
    case ClassKind::EllCubic:
      // the stabilizer torus has fixed points, so orbits are not free
      // modulo scalars and no one-per-orbit listing exists in this family
      throw UnsupportedKindError(
          "no fundamental domain listing for the irreducible cubic kind");
  }
  return out;
}

DomainCheck verify_fundamental_domain(const HalfSpace& h,
                                      const std::vector<uint64_t>& domain,
                                      const std::vector<Mat3>& group) {
  DomainCheck chk;
  chk.domain_size = domain.size();
  chk.disjoint = true;
  std::vector<uint32_t> owner(h.num_points, ~0u);
  for (uint32_t i = 0; i < domain.size(); ++i) {
    for (const Mat3& g : group) {
      uint32_t idx = h.index_of(h.act(g, domain[i]));
      if (owner[idx] == i) continue;
      if (owner[idx] != ~0u) chk.disjoint = false;
      owner[idx] = i;
    }
  }
  for (uint32_t o : owner)
    if (o != ~0u) ++chk.covered;
  chk.exact = chk.disjoint && chk.covered == h.num_points;
  return chk;
}

}  // namespace gl3trace
