#include "gl3trace/field.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace gl3trace {

namespace {

constexpr uint64_t kMulTableMax = 1u << 20;
constexpr uint64_t kAddTableMax = 4096;
constexpr uint64_t kCharEnumMax = 1u << 26;

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

bool miller_rabin(uint64_t m, uint64_t a) {
  if (a % m == 0) return true;
  uint64_t d = m - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  uint64_t x = powmod_u64(a, d, m);
  if (x == 1 || x == m - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod_u64(x, x, m);
    if (x == m - 1) return true;
  }
  return false;
}

uint64_t pollard_rho(uint64_t m) {
  if (m % 2 == 0) return 2;
  uint64_t c = 1;
  while (true) {
    uint64_t x = 2, y = 2, d = 1;
    auto step = [&](uint64_t v) { return (mulmod_u64(v, v, m) + c) % m; };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      uint64_t diff = x > y ? x - y : y - x;
      d = diff ? std::gcd(diff, m) : m;
    }
    if (d != m) return d;
    ++c;
  }
}

void factor_into(uint64_t m, std::vector<uint64_t>& out) {
  if (m == 1) return;
  if (is_prime_u64(m)) {
    out.push_back(m);
    return;
  }
  uint64_t d = pollard_rho(m);
  factor_into(d, out);
  factor_into(m / d, out);
}

// Dense little-endian polynomials over an arbitrary tower field; only used
// for irreducibility testing and the generic multiplication fallback, so
// clarity beats speed here.
using Poly = std::vector<uint64_t>;

void ptrim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly pmul(const Field& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  return r;
}

// a mod m, with m monic.
Poly pmod(const Field& f, Poly a, const Poly& m) {
  ptrim(a);
  while (a.size() >= m.size()) {
    uint64_t c = a.back();
    size_t shift = a.size() - m.size();
    if (c != 0)
      for (size_t j = 0; j < m.size(); ++j)
        a[shift + j] = f.sub(a[shift + j], f.mul(c, m[j]));
    a.pop_back();
    ptrim(a);
  }
  return a;
}

Poly ppowmod(const Field& f, Poly base, uint64_t e, const Poly& m) {
  Poly r = {1};
  base = pmod(f, std::move(base), m);
  while (e) {
    if (e & 1) r = pmod(f, pmul(f, r, base), m);
    base = pmod(f, pmul(f, base, base), m);
    e >>= 1;
  }
  return r;
}

Poly pgcd(const Field& f, Poly a, Poly b) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    // make b monic so pmod applies
    uint64_t lead = b.back();
    if (lead != 1) {
      uint64_t il = f.inv(lead);
      for (auto& c : b) c = f.mul(c, il);
    }
    Poly r = pmod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Rabin test: monic f of degree d over a field of order b is irreducible
// iff x^(b^d) = x mod f and gcd(x^(b^(d/l)) - x, f) = 1 for each prime l | d.
bool is_irreducible(const Field& base, const Poly& monic) {
  size_t d = monic.size() - 1;
  if (d == 0) return false;
  if (d == 1) return true;
  uint64_t b = base.q();
  Poly x = {0, 1};
  std::vector<Poly> frob_powers(d + 1);  // frob_powers[k] = x^(b^k) mod monic
  frob_powers[0] = x;
  for (size_t k = 1; k <= d; ++k)
    frob_powers[k] = ppowmod(base, frob_powers[k - 1], b, monic);
  {
    Poly t = frob_powers[d];
    // t - x == 0 ?
    Poly diff = t;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = base.sub(diff[1], 1);
    ptrim(diff);
    if (!diff.empty()) return false;
  }
  std::vector<uint64_t> dps = prime_factors_u64(d);
  std::sort(dps.begin(), dps.end());
  dps.erase(std::unique(dps.begin(), dps.end()), dps.end());
  for (uint64_t l : dps) {
    Poly diff = frob_powers[d / l];
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = base.sub(diff[1], 1);
    ptrim(diff);
    Poly g = pgcd(base, monic, diff);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace

bool is_prime_u64(uint64_t m) {
  if (m < 2) return false;
  for (uint64_t sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (m == sp) return true;
    if (m % sp == 0) return false;
  }
  // deterministic Miller-Rabin bases for 64-bit range
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
    if (!miller_rabin(m, a)) return false;
  return true;
}

std::vector<uint64_t> prime_factors_u64(uint64_t m) {
  std::vector<uint64_t> out;
  factor_into(m, out);
  std::sort(out.begin(), out.end());
  return out;
}

Field Field::prime_field(uint64_t p) {
  if (!is_prime_u64(p)) throw NotPrimeError("not prime: " + std::to_string(p));
  Field f;
  f.p_ = p;
  f.q_ = p;
  f.n_ = 1;
  f.d_ = 1;
  f.finish_init();
  return f;
}

Field Field::extension_with_poly(const Field& base,
                                 const std::vector<uint64_t>& monic_poly) {
  if (monic_poly.size() < 2 || monic_poly.back() != 1)
    throw ReduciblePolynomialError("extension polynomial must be monic of degree >= 1");
  for (uint64_t c : monic_poly)
    if (c >= base.q())
      throw ReduciblePolynomialError("polynomial coefficient out of range");
  if (!is_irreducible(base, monic_poly))
    throw ReduciblePolynomialError("polynomial is reducible over the base field");
  unsigned deg = static_cast<unsigned>(monic_poly.size() - 1);
  Field f;
  f.p_ = base.p();
  f.d_ = deg;
  f.n_ = base.n() * deg;
  f.q_ = 1;
  for (unsigned i = 0; i < deg; ++i) {
    if (f.q_ > UINT64_MAX / base.q())
      throw Error("field too large for 64-bit element codes");
    f.q_ *= base.q();
  }
  f.base_ = std::make_shared<Field>(base);
  f.poly_ = monic_poly;
  f.finish_init();
  return f;
}

Field Field::extension(const Field& base, unsigned deg) {
  if (deg == 0) throw Error("extension degree must be positive");
  if (deg == 1) return base;
  // Scan candidate monic polynomials by ascending integer code of the
  // non-leading part; the first irreducible hit is the canonical choice.
  uint64_t b = base.q();
  uint64_t limit = 1;
  for (unsigned i = 0; i < deg; ++i) {
    if (limit > UINT64_MAX / b) throw Error("field too large for 64-bit element codes");
    limit *= b;
  }
  for (uint64_t m = 0; m < limit; ++m) {
    std::vector<uint64_t> poly(deg + 1, 0);
    uint64_t t = m;
    for (unsigned i = 0; i < deg; ++i) {
      poly[i] = t % b;
      t /= b;
    }
    poly[deg] = 1;
    if (is_irreducible(base, poly)) return extension_with_poly(base, poly);
  }
  throw Error("no irreducible polynomial found");  // unreachable
}

void Field::finish_init() {
  // Generator: smallest code whose order is exactly q - 1.
  std::vector<uint64_t> fac = prime_factors_u64(q_ - 1);
  fac.erase(std::unique(fac.begin(), fac.end()), fac.end());
  for (uint64_t c = 1; c < q_; ++c) {
    bool ok = c != 0;
    for (uint64_t l : fac) {
      if (pow(c, (q_ - 1) / l) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      g_ = c;
      break;
    }
  }
  if (g_ == 0) throw Error("no generator found");

  if (q_ <= kMulTableMax) {
    exp_.resize(q_ - 1);
    log_.assign(q_, 0xFFFFFFFFu);
    uint64_t cur = 1;
    for (uint64_t k = 0; k + 1 < q_; ++k) {
      exp_[k] = static_cast<uint32_t>(cur);
      log_[cur] = static_cast<uint32_t>(k);
      cur = mul_generic(cur, g_);
    }
    if (cur != 1) throw Error("generator order mismatch");
    if (q_ <= kAddTableMax && p_ != 2) {
      add_.resize(q_ * q_);
      if (d_ == 1) {
        for (uint64_t a = 0; a < q_; ++a)
          for (uint64_t b = 0; b < q_; ++b) {
            uint64_t s = a + b;
            add_[a * q_ + b] = static_cast<uint32_t>(s >= q_ ? s - q_ : s);
          }
      } else {
        for (uint64_t a = 0; a < q_; ++a)
          for (uint64_t b = 0; b < q_; ++b) {
            uint64_t s = 0, mul = 1, x = a, y = b;
            for (unsigned i = 0; i < d_; ++i) {
              s += base_->add(x % base_->q(), y % base_->q()) * mul;
              mul *= base_->q();
              x /= base_->q();
              y /= base_->q();
            }
            add_[a * q_ + b] = static_cast<uint32_t>(s);
          }
      }
    }
    frob_.resize(q_);
    for (uint64_t a = 0; a < q_; ++a)
      frob_[a] = static_cast<uint32_t>(pow(a, p_));
  }
}

uint64_t Field::add(uint64_t a, uint64_t b) const {
  // In characteristic 2 every level's code is a bit vector of prime-field
  // coordinates (base orders are powers of two), so addition is XOR.
  if (p_ == 2) return a ^ b;
  if (!add_.empty()) return add_[a * q_ + b];
  if (d_ == 1) {
    uint64_t s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  uint64_t s = 0, mul = 1;
  for (unsigned i = 0; i < d_; ++i) {
    s += base_->add(a % base_->q(), b % base_->q()) * mul;
    mul *= base_->q();
    a /= base_->q();
    b /= base_->q();
  }
  return s;
}

uint64_t Field::neg(uint64_t a) const {
  if (p_ == 2) return a;
  if (d_ == 1) return a == 0 ? 0 : q_ - a;
  uint64_t s = 0, mul = 1;
  for (unsigned i = 0; i < d_; ++i) {
    s += base_->neg(a % base_->q()) * mul;
    mul *= base_->q();
    a /= base_->q();
  }
  return s;
}

uint64_t Field::sub(uint64_t a, uint64_t b) const { return add(a, neg(b)); }

uint64_t Field::mul_generic(uint64_t a, uint64_t b) const {
  if (d_ == 1) return mulmod_u64(a, b, q_);
  Poly pa, pb;
  uint64_t x = a, y = b;
  for (unsigned i = 0; i < d_; ++i) {
    pa.push_back(x % base_->q());
    pb.push_back(y % base_->q());
    x /= base_->q();
    y /= base_->q();
  }
  Poly pr = pmod(*base_, pmul(*base_, pa, pb), poly_);
  uint64_t r = 0, mul = 1;
  for (size_t i = 0; i < d_; ++i) {
    if (i < pr.size()) r += pr[i] * mul;
    mul *= base_->q();
  }
  return r;
}

uint64_t Field::mul(uint64_t a, uint64_t b) const {
  if (!exp_.empty()) {
    if (a == 0 || b == 0) return 0;
    uint64_t s = static_cast<uint64_t>(log_[a]) + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  return mul_generic(a, b);
}

uint64_t Field::inv(uint64_t a) const {
  if (a == 0) throw DenominatorZeroError("inverse of zero");
  if (!exp_.empty()) {
    uint64_t l = log_[a];
    return l == 0 ? 1 : exp_[q_ - 1 - l];
  }
  return pow(a, q_ - 2);
}

uint64_t Field::div(uint64_t a, uint64_t b) const { return mul(a, inv(b)); }

uint64_t Field::pow(uint64_t a, uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  if (!exp_.empty()) {
    uint64_t l = log_[a];
    uint64_t r = q_ - 1;
    uint64_t k = mulmod_u64(l % r, e % r, r);
    return k == 0 ? 1 : exp_[k];
  }
  uint64_t r = 1, base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

uint64_t Field::pow_big(uint64_t a, const BigInt& e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  BigInt red = e % BigInt(static_cast<unsigned long>(q_ - 1));
  if (red < 0) red += q_ - 1;
  return pow(a, red.get_ui());
}

uint64_t Field::frob(uint64_t a) const {
  if (!frob_.empty()) return frob_[a];
  return pow(a, p_);
}

bool Field::in_subfield(uint64_t a, unsigned k) const {
  if (k == 0 || n_ % k != 0)
    throw LevelMismatchError("subfield degree does not divide field degree");
  uint64_t x = a;
  for (unsigned i = 0; i < k; ++i) x = frob(x);
  return x == a;
}

std::vector<uint64_t> Field::coords(uint64_t a) const {
  std::vector<uint64_t> c(d_);
  uint64_t b = d_ == 1 ? q_ : base_->q();
  for (unsigned i = 0; i < d_; ++i) {
    c[i] = a % b;
    a /= b;
  }
  return c;
}

uint64_t Field::from_coords(const std::vector<uint64_t>& c) const {
  if (c.size() != d_) throw LevelMismatchError("coordinate vector length mismatch");
  uint64_t b = d_ == 1 ? q_ : base_->q();
  uint64_t r = 0, mul = 1;
  for (unsigned i = 0; i < d_; ++i) {
    if (c[i] >= b) throw Error("coordinate out of range");
    r += c[i] * mul;
    mul *= b;
  }
  return r;
}

uint64_t Field::log(uint64_t a) const {
  if (a == 0) throw DenominatorZeroError("log of zero");
  if (!log_.empty()) return log_[a];
  // slow fallback, only hit on untabled fields in cold paths
  uint64_t cur = 1;
  for (uint64_t k = 0; k < q_ - 1; ++k) {
    if (cur == a) return k;
    cur = mul(cur, g_);
  }
  throw Error("log scan failed");
}

uint64_t Field::exp(uint64_t k) const {
  if (!exp_.empty()) return exp_[k % (q_ - 1)];
  return pow(g_, k % (q_ - 1));
}

uint64_t Field::rank(uint64_t a) const { return a == 0 ? 0 : 1 + log(a); }

uint64_t find_cube_nonresidue(const Field& f) {
  if ((f.q() - 1) % 3 != 0)
    throw NotCongruent1Mod3Error(
        "field order " + std::to_string(f.q()) +
        ": cubing is a bijection, no cube nonresidue exists");
  uint64_t e = (f.q() - 1) / 3;
  for (uint64_t c = 1; c < f.q(); ++c)
    if (f.pow(c, e) != 1) return c;
  throw Error("no cube nonresidue found");  // unreachable for q = 1 mod 3
}

uint64_t find_cube_nonresidue_generator_order(const Field& f) {
  if ((f.q() - 1) % 3 != 0)
    throw NotCongruent1Mod3Error(
        "field order " + std::to_string(f.q()) +
        ": cubing is a bijection, no cube nonresidue exists");
  // g^k is a cube iff 3 | k, so the first nonresidue along powers is g itself.
  return f.generator();
}

uint64_t Tower::frob_q(uint64_t a) const { return fq3.pow(a, q); }

Tower Tower::build(uint64_t p, unsigned n,
                   const std::vector<uint64_t>* poly_override,
                   const std::string& delta_rule) {
  if (n == 0) throw Error("extension degree must be positive");
  Tower t;
  t.p = p;
  t.n = n;
  t.fp = Field::prime_field(p);
  if (n == 1) {
    t.fq = t.fp;
  } else if (poly_override) {
    if (poly_override->size() != n + 1)
      throw ReduciblePolynomialError("override polynomial has wrong degree");
    t.fq = Field::extension_with_poly(t.fp, *poly_override);
  } else {
    t.fq = Field::extension(t.fp, n);
  }
  t.q = t.fq.q();
  if (delta_rule == "first") {
    t.delta = find_cube_nonresidue(t.fq);
  } else if (delta_rule == "generator") {
    t.delta = find_cube_nonresidue_generator_order(t.fq);
  } else {
    throw UnknownConditionError("unknown delta rule: " + delta_rule);
  }
  // t^3 = delta, i.e. minimal polynomial t^3 - delta.
  std::vector<uint64_t> cubic = {t.fq.neg(t.delta), 0, 0, 1};
  t.fq3 = Field::extension_with_poly(t.fq, cubic);
  // The q-power map is a field automorphism; checking it on a multiplicative
  // generator proves its order on the whole field.
  uint64_t g = t.fq3.generator();
  uint64_t g1 = t.frob_q(g);
  uint64_t g3 = t.frob_q(t.frob_q(g1));
  if (g1 == g || g3 != g) throw Error("tower Frobenius does not have order 3");
  return t;
}

uint64_t field_norm(const Field& e, uint64_t x, const Field& f) {
  const Field* c = &e;
  while (c && c->q() != f.q()) c = c->base();
  if (!c) throw LevelMismatchError("norm target is not a subfield in the tower");
  uint64_t exponent = (e.q() - 1) / (f.q() - 1);
  uint64_t r = e.pow(x, exponent);
  if (r >= f.q()) throw Error("norm left the subfield code range");
  return r;
}

bool char_restriction_trivial(const MultChar& c, const BigInt& subgroup_order) {
  if (subgroup_order <= 0 || c.modulus % subgroup_order != 0)
    throw NotASubgroupError("no subgroup of order " + to_str(subgroup_order) +
                            " in a cyclic group of order " + to_str(c.modulus));
  // chi(g^(M/d)) = zeta^(e*M/d); trivial on the order-d subgroup iff d | e.
  BigInt e = c.exponent % c.modulus;
  if (e < 0) e += c.modulus;
  return e % subgroup_order == 0;
}

namespace {

BigInt exact_div(const BigInt& a, const BigInt& b) {
  if (b == 0 || a % b != 0) throw Error("inexact division in character count");
  return a / b;
}

BigInt big_lcm(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return a / g * b;
}

struct CharCountCtx {
  BigInt q, R, r, T, g2, g3;
  BigInt R2, r2, Q1;  // order-q^2 level
  BigInt R3, r3, Q3;  // order-q^3 level
};

CharCountCtx make_ctx(const BigInt& p, unsigned n) {
  CharCountCtx c;
  c.q = big_pow(p, n);
  c.R = c.q - 1;
  c.r = p - 1;
  c.T = exact_div(c.R, c.r);
  c.g2 = c.r % 2 == 0 ? 2 : 1;
  c.g3 = c.r % 3 == 0 ? 3 : 1;
  c.R2 = c.q * c.q - 1;
  c.r2 = p * p - 1;
  c.Q1 = c.q + 1;
  c.R3 = big_pow(c.q, 3) - 1;
  c.r3 = big_pow(p, 3) - 1;
  c.Q3 = c.q * c.q + c.q + 1;
  return c;
}

}  // namespace

BigInt count_chars(const std::string& condition, const BigInt& p, unsigned n) {
  if (p < 2 || n == 0) throw Error("invalid field parameters");
  CharCountCtx c = make_ctx(p, n);
  const BigInt &R = c.R, &r = c.r, &T = c.T, &g2 = c.g2, &g3 = c.g3;
  if (condition == "alpha_trivial") return T;
  if (condition == "alpha_cube_trivial_only") return T * (g3 - 1);
  if (condition == "alpha_cube_nontrivial") return R - T * g3;
  if (condition == "pair_case3") return T * (T - 1);
  if (condition == "pair_case2") return T * T * (g2 - 1);
  if (condition == "pair_case1") return (R - T * g2) * T - T * (g3 - 1);
  if (condition == "triple_case3") return exact_div(T * (T - 1) * (T - 2), 6);
  if (condition == "triple_case2")
    return exact_div(T * ((R - T) * T - T * (g2 - 1)), 2);
  if (condition == "triple_case1")
    return exact_div(
        T * T * T * (r - 1) * (r - 2) - 3 * ((R - T * g2) * T) + 2 * T * (g3 - 1), 6);
  const BigInt &R2 = c.R2, &r2 = c.r2, &Q1 = c.Q1;
  if (condition == "nu_orbits") return exact_div(R2 - exact_div(R2, Q1), 2);
  if (condition == "nu_case1")
    return T * exact_div(R2 - exact_div(R2, Q1) - exact_div(R2, r) +
                             exact_div(R2, big_lcm(Q1, r)),
                         2);
  if (condition == "nu_case2")
    return T * exact_div(exact_div(R2, r) - exact_div(R2, big_lcm(Q1, r)) -
                             exact_div(R2, r2) + exact_div(R2, big_lcm(Q1, r2)),
                         2);
  if (condition == "nu_case3")
    return T * exact_div(exact_div(R2, r2) - exact_div(R2, big_lcm(Q1, r2)), 2);
  const BigInt &R3 = c.R3, &r3 = c.r3, &Q3 = c.Q3;
  if (condition == "mu_orbits") return exact_div(R3 - exact_div(R3, Q3), 3);
  if (condition == "mu_case1")
    return exact_div(exact_div(R3, r) - exact_div(R3, big_lcm(Q3, r)) -
                         exact_div(R3, r3) + exact_div(R3, big_lcm(Q3, r3)),
                     3);
  if (condition == "mu_case2")
    return exact_div(exact_div(R3, r3) - exact_div(R3, big_lcm(Q3, r3)), 3);
  if (condition == "mu_case0")
    return count_chars("mu_orbits", p, n) - count_chars("mu_case1", p, n) -
           count_chars("mu_case2", p, n);
  throw UnknownConditionError("unknown character condition: " + condition);
}

namespace {

// Shared enumeration helpers.  Characters of a cyclic group of order M are
// integer exponents mod M; triviality on the subgroup of order d is d | e.

BigInt enum_alpha(const std::string& which, uint64_t R, uint64_t r) {
  uint64_t count = 0;
  for (uint64_t e = 0; e < R; ++e) {
    bool triv = e % r == 0;
    bool cube_triv = (3 * e) % r == 0;
    if (which == "alpha_trivial" && triv) ++count;
    if (which == "alpha_cube_trivial_only" && cube_triv && !triv) ++count;
    if (which == "alpha_cube_nontrivial" && !cube_triv) ++count;
  }
  return count;
}

BigInt enum_pair(const std::string& which, uint64_t R, uint64_t r) {
  uint64_t count = 0;
  for (uint64_t a = 0; a < R; ++a)
    for (uint64_t b = 0; b < R; ++b) {
      if (a == b) continue;
      if ((2 * a + b) % r != 0) continue;  // central restriction must vanish
      bool at = a % r == 0, bt = b % r == 0;
      if (which == "pair_case3" && at && bt) ++count;
      if (which == "pair_case2" && !at && bt) ++count;
      if (which == "pair_case1" && !at && !bt) ++count;
    }
  return count;
}

BigInt enum_triple(const std::string& which, uint64_t R, uint64_t r) {
  uint64_t count = 0;
  for (uint64_t a = 0; a < R; ++a)
    for (uint64_t b = a + 1; b < R; ++b)
      for (uint64_t cc = b + 1; cc < R; ++cc) {
        if ((a + b + cc) % r != 0) continue;
        int ntriv = (a % r == 0) + (b % r == 0) + (cc % r == 0);
        if (which == "triple_case3" && ntriv == 3) ++count;
        if (which == "triple_case2" && ntriv == 1) ++count;
        if (which == "triple_case1" && ntriv == 0) ++count;
      }
  return count;
}

BigInt enum_nu(const std::string& which, uint64_t q, uint64_t p) {
  uint64_t R2 = q * q - 1, r = p - 1, r2 = p * p - 1, R = q - 1;
  BigInt count = 0;
  for (uint64_t e = 0; e < R2; ++e) {
    uint64_t conj = mulmod_u64(e, q, R2);
    if (conj == e) continue;   // not regular
    if (conj < e) continue;    // count each Galois orbit once
    bool t1 = e % r == 0, t2 = e % r2 == 0;
    bool in_case = (which == "nu_orbits") ||
                   (which == "nu_case1" && !t1) ||
                   (which == "nu_case2" && t1 && !t2) ||
                   (which == "nu_case3" && t2);
    if (!in_case) continue;
    if (which == "nu_orbits") {
      count += 1;
      continue;
    }
    // pair with the order-R character beta: central condition r | (e + b)
    uint64_t betas = 0;
    for (uint64_t b = 0; b < R; ++b)
      if ((e + b) % r == 0) ++betas;
    count += betas;
  }
  return count;
}

BigInt enum_mu(const std::string& which, uint64_t q, uint64_t p) {
  uint64_t R3 = q * q * q - 1, r = p - 1, r3 = p * p * p - 1;
  BigInt count = 0;
  for (uint64_t e = 0; e < R3; ++e) {
    uint64_t c1 = mulmod_u64(e, q, R3);
    if (c1 == e) continue;
    uint64_t c2 = mulmod_u64(c1, q, R3);
    if (c1 < e || c2 < e) continue;  // orbit representative = minimum
    bool t1 = e % r == 0, t3 = e % r3 == 0;
    if (which == "mu_orbits") ++count;
    if (which == "mu_case1" && t1 && !t3) ++count;
    if (which == "mu_case2" && t3) ++count;
    if (which == "mu_case0" && !t1) ++count;
  }
  return count;
}

}  // namespace

BigInt count_chars_enum(const std::string& condition, const BigInt& p, unsigned n) {
  if (p < 2 || n == 0) throw Error("invalid field parameters");
  static const std::vector<std::string> known = {
      "alpha_trivial", "alpha_cube_trivial_only", "alpha_cube_nontrivial",
      "pair_case1",    "pair_case2",              "pair_case3",
      "triple_case1",  "triple_case2",            "triple_case3",
      "nu_orbits",     "nu_case1",                "nu_case2",
      "nu_case3",      "mu_orbits",               "mu_case1",
      "mu_case2",      "mu_case0"};
  if (std::find(known.begin(), known.end(), condition) == known.end())
    throw UnknownConditionError("unknown character condition: " + condition);
  BigInt qb = big_pow(p, n);
  if (qb > BigInt(static_cast<unsigned long>(1u << 16)))
    throw BudgetExceededError("field too large for character enumeration");
  uint64_t q = qb.get_ui(), pp = p.get_ui();
  uint64_t R = q - 1, r = pp - 1;
  if (condition.rfind("alpha_", 0) == 0) {
    if (R > kCharEnumMax) throw BudgetExceededError("alpha enumeration too large");
    return enum_alpha(condition, R, r);
  }
  if (condition.rfind("pair_", 0) == 0) {
    if (R > 5000) throw BudgetExceededError("pair enumeration too large");
    return enum_pair(condition, R, r);
  }
  if (condition.rfind("triple_", 0) == 0) {
    if (R > 600) throw BudgetExceededError("triple enumeration too large");
    return enum_triple(condition, R, r);
  }
  if (condition.rfind("nu_", 0) == 0) {
    if (q > 500) throw BudgetExceededError("nu enumeration too large");
    return enum_nu(condition, q, pp);
  }
  if (condition.rfind("mu_", 0) == 0) {
    if (q > 160) throw BudgetExceededError("mu enumeration too large");
    return enum_mu(condition, q, pp);
  }
  throw UnknownConditionError("unknown character condition: " + condition);
}

}  // namespace gl3trace
