#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace markt {

/// Exact rational number. Every rate, probability and duration in the
/// checker is one of these; nothing is ever rounded to floating point.
using Rational = mpq_class;

/// n/d in canonical form. mpq_class(n, d) does not reduce, and comparisons
/// assume reduced operands.
inline Rational ratio(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

/// Parses "3", "2.5", "3/8" (and "-1/2" when allow_negative) exactly.
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text, bool allow_negative = false);

/// Parses a comma-separated list of rationals, e.g. "3/8,3/8".
std::vector<Rational> parse_rational_list(std::string_view text);

/// Canonical "num/den" form used by machine-readable output.
std::string to_fraction_string(const Rational& q);

/// Shortest exact form: "2" for integers, "3/8" otherwise.
std::string to_string(const Rational& q);

}  // namespace markt
