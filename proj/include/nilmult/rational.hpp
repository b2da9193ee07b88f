#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace nilmult {

/// Exact rational scalar. GMP keeps values canonical: denominator > 0,
/// gcd(|num|, den) = 1, and arithmetic never overflows.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

/// Serialized form used in all JSON I/O: "p/q", or just "p" when q = 1.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rational: empty string");
  Rational r;
  if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
    throw std::invalid_argument("rational: cannot parse \"" + s + "\"");
  if (sgn(Rational(r.get_den())) <= 0)
    throw std::invalid_argument("rational: nonpositive denominator in \"" + s + "\"");
  r.canonicalize();
  return r;
}

/// x -= a*b without temporaries; the elimination inner loop lives on this.
inline void sub_mul(Rational& x, const Rational& a, const Rational& b) {
  static thread_local Rational scratch;
  mpq_mul(scratch.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
  mpq_sub(x.get_mpq_t(), x.get_mpq_t(), scratch.get_mpq_t());
}

}  // namespace nilmult
