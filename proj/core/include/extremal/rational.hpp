#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace extremal {

using Rational = mpq_class;
using Integer = mpz_class;

/// num / den in canonical form.
inline Rational ratio(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Exact value of a finite double (every double is a dyadic rational).
Rational exact(double x);

/// Best rational approximation with denominator <= max_denominator, by
/// continued fractions of the exact value of x.
Rational rationalize(double x, const Integer& max_denominator);

/// Decimal string of numerator/denominator, e.g. "-3/7" or "2".
std::string to_string(const Rational& q);

/// Parses "p/q" or "p".  Throws std::invalid_argument on malformed input or a
/// zero denominator.
Rational parse_rational(std::string_view text);

Integer floor(const Rational& q);

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace extremal
