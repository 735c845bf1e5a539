#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>

namespace indep {

/// Exact arbitrary-precision rational. Always kept in canonical form.
using Rational = mpq_class;

/// Parses "p/q", "-p/q" or an integer "p". Decimal notation is rejected.
/// Throws Error{BadRational}.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" rendering; integers are rendered without "/1".
std::string to_string(const Rational& value);

Rational sum(std::span<const Rational> values);

/// p/q in canonical form (the two-argument mpq_class constructor does not reduce).
inline Rational make_rational(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

/// Nearest double, computed once from the exact value.
inline double to_double(const Rational& value) { return value.get_d(); }

/// Exact rational equal to the given finite double.
Rational from_double(double value);

}  // namespace indep
