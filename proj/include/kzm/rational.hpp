#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <vector>

namespace kzm {

using Rational = mpq_class;
using Integer = mpz_class;
using Complex = std::complex<double>;

/// Canonical "p/q" text ("p" when the denominator is 1).
std::string to_string(const Rational& q);

/// Parses "p", "p/q" or "-p/q". Throws DomainError on malformed input.
Rational parse_rational(const std::string& text);

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }
/// p/q in canonical form. mpq_class(p, q) alone leaves 2/2 unreduced.
inline Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& q) { return q.get_d(); }

using RationalVector = std::vector<Rational>;

}  // namespace kzm
