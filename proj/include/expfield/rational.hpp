#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace expfield {

// GMP keeps mpq_class canonical (reduced, positive denominator) after every
// arithmetic operation; literals built from two integers go through canonical().
using Integer = mpz_class;
using Rational = mpq_class;
using QVector = std::vector<Rational>;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational inverse(const Rational& q) { return Rational(1) / q; }

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline std::string to_string(const Rational& q) { return q.get_str(); }

Integer lcm_of_denominators(const QVector& v);

// Scales v by a positive rational so it is an integer vector with coprime
// entries. The zero vector is returned unchanged.
QVector primitive_part(const QVector& v);

}  // namespace expfield
