#include "gl3trace/spherical.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <sstream>
#include <unordered_set>

namespace gl3trace {

SphericalFn SphericalFn::constant(const HalfSpace& h, const Rat& c) {
  SphericalFn f;
  f.values.assign(h.orbit_reps.size(), c);
  return f;
}

SphericalFn SphericalFn::delta_p0(const HalfSpace& h) {
  return delta_orbit(h, h.orbit_of_point(h.p0));
}

SphericalFn SphericalFn::delta_orbit(const HalfSpace& h, uint32_t orbit) {
  if (orbit >= h.orbit_reps.size()) throw Error("orbit index out of range");
  SphericalFn f;
  f.values.assign(h.orbit_reps.size(), Rat(0));
  f.values[orbit] = 1;
  return f;
}

SphericalFn SphericalFn::random(const HalfSpace& h, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  SphericalFn f;
  f.values.reserve(h.orbit_reps.size());
  for (size_t i = 0; i < h.orbit_reps.size(); ++i) {
    Rat v(num(rng), den(rng));
    v.canonicalize();
    f.values.push_back(v);
  }
  return f;
}

SphericalFn SphericalFn::from_table(const HalfSpace& h, const std::string& text) {
  SphericalFn f;
  f.values.assign(h.orbit_reps.size(), Rat(0));
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string idx_s, val_s;
    if (!(ls >> idx_s)) continue;  // blank
    if (!(ls >> val_s))
      throw Error("table line " + std::to_string(lineno) + ": missing value");
    std::string extra;
    if (ls >> extra)
      throw Error("table line " + std::to_string(lineno) + ": trailing tokens");
    size_t pos = 0;
    unsigned long idx = std::stoul(idx_s, &pos);
    if (pos != idx_s.size())
      throw Error("table line " + std::to_string(lineno) + ": bad orbit index");
    if (idx >= f.values.size())
      throw Error("table line " + std::to_string(lineno) + ": orbit index out of range");
    f.values[idx] = parse_rat(val_s);
  }
  return f;
}

std::vector<Mat2> gl2_class_elements(const Field& fq, const Mat2& kappa) {
  if (det2(fq, kappa) == 0) throw SingularKappaError("class of a singular matrix");
  CharPoly2 cp = charpoly2(fq, kappa);
  // repeated eigenvalue iff discriminant tr^2 - 4 det vanishes
  uint64_t four = 4 % fq.p();  // prime-subfield code of 1+1+1+1
  uint64_t disc = fq.sub(fq.mul(cp.trace, cp.trace), fq.mul(four, cp.det));
  bool kappa_scalar = kappa.at(0, 1) == 0 && kappa.at(1, 0) == 0 &&
                      kappa.at(0, 0) == kappa.at(1, 1);
  std::vector<Mat2> out;
  uint64_t q = fq.q();
  uint64_t codes = q * q * q * q;
  for (uint64_t c = 0; c < codes; ++c) {
    Mat2 m = mat2_from_code(fq, c);
    if (det2(fq, m) == 0) continue;
    if (charpoly2(fq, m) != cp) continue;
    if (disc == 0) {
      bool m_scalar = m.at(0, 1) == 0 && m.at(1, 0) == 0 && m.at(0, 0) == m.at(1, 1);
      if (m_scalar != kappa_scalar) continue;
    }
    out.push_back(m);
  }
  return out;
}

std::vector<Mat2> gl2_class_elements_bfs(const Field& fq, const Mat2& kappa) {
  if (det2(fq, kappa) == 0) throw SingularKappaError("class of a singular matrix");
  // generators of GL2: transvection, swap, dilation
  std::vector<Mat2> gens;
  {
    Mat2 t = mat2_identity();
    t.at(0, 1) = 1;
    Mat2 s;
    s.at(0, 1) = s.at(1, 0) = 1;
    Mat2 d = mat2_identity();
    d.at(0, 0) = fq.generator();
    gens = {t, s, d};
  }
  std::vector<Mat2> gi;
  for (const auto& g : gens) gi.push_back(inv2(fq, g));
  std::unordered_set<uint64_t> seen{mat2_code(fq, kappa)};
  std::queue<Mat2> todo;
  todo.push(kappa);
  while (!todo.empty()) {
    Mat2 cur = todo.front();
    todo.pop();
    for (size_t i = 0; i < gens.size(); ++i) {
      Mat2 nxt = mmul2(fq, mmul2(fq, gens[i], cur), gi[i]);
      if (seen.insert(mat2_code(fq, nxt)).second) todo.push(nxt);
    }
  }
  std::vector<uint64_t> codes(seen.begin(), seen.end());
  std::sort(codes.begin(), codes.end());
  std::vector<Mat2> out;
  for (uint64_t c : codes) out.push_back(mat2_from_code(fq, c));
  return out;
}

Rat horocycle_transform(const HalfSpace& h, const SphericalFn& f, const Mat2& kappa) {
  const Field& fq = h.tower.fq;
  std::vector<Mat2> cls = gl2_class_elements(fq, kappa);
  Rat total = 0;
  uint64_t q = h.q;
  for (const Mat2& xi : cls) {
    Mat3 g;
    g.at(0, 0) = xi.at(0, 0);
    g.at(0, 1) = xi.at(0, 1);
    g.at(1, 0) = xi.at(1, 0);
    g.at(1, 1) = xi.at(1, 1);
    g.at(2, 2) = 1;
    for (uint64_t x = 0; x < q; ++x) {
      g.at(0, 2) = x;
      for (uint64_t y = 0; y < q; ++y) {
        g.at(1, 2) = y;
        total += f.eval_mat(h, g);
      }
    }
  }
  return total;
}

}  // namespace gl3trace
