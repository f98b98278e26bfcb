#pragma once

#include <gmpxx.h>

#include <string>

#include "gl3trace/errors.hpp"

namespace gl3trace {

// All counting and report values are exact; no floating point anywhere.
using BigInt = mpz_class;
using Rat = mpq_class;

inline std::string to_str(const BigInt& v) { return v.get_str(); }

// Canonical form: bare integer when the denominator is 1, else "num/den".
inline std::string to_str(const Rat& v) {
  Rat c = v;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

// Accepts "a" and "a/b" (optional leading minus).  DenominatorZeroError on
// zero denominator, generic Error on malformed input.
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw Error("empty rational literal");
  std::size_t pos = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool seen_digit = false, seen_slash = false, den_digit = false;
  for (std::size_t i = pos; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '/') {
      if (seen_slash || !seen_digit) throw Error("malformed rational: " + s);
      seen_slash = true;
    } else if (ch >= '0' && ch <= '9') {
      (seen_slash ? den_digit : seen_digit) = true;
    } else {
      throw Error("malformed rational: " + s);
    }
  }
  if (!seen_digit || (seen_slash && !den_digit))
    throw Error("malformed rational: " + s);
  Rat v(s[0] == '+' ? s.substr(1) : s);
  if (v.get_den() == 0) throw DenominatorZeroError("zero denominator: " + s);
  v.canonicalize();
  return v;
}

inline BigInt big_pow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// |GL3(F_q)| = (q^3 - 1)(q^3 - q)(q^3 - q^2)
inline BigInt gl3_order(const BigInt& q) {
  BigInt q3 = big_pow(q, 3);
  return (q3 - 1) * (q3 - q) * (q3 - q * q);
}

// |GL2(F_q)| = (q^2 - 1)(q^2 - q)
inline BigInt gl2_order(const BigInt& q) {
  BigInt q2 = q * q;
  return (q2 - 1) * (q2 - q);
}

}  // namespace gl3trace
