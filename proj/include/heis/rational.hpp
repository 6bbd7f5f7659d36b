#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace heis {

/// Exact rational with unbounded numerator and denominator. Always canonical.
using Rational = mpq_class;

/// Builds num/den in canonical form. Throws std::invalid_argument if den == 0.
Rational make_rational(long num, long den = 1);

/// Parses "p/q", an integer, or a finite decimal ("-0.125", "1e-3") exactly.
Rational parse_rational(std::string_view text);

/// Parses a comma-separated list with parse_rational.
std::vector<Rational> parse_rational_list(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

} // namespace heis
