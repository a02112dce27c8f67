#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace cy3 {

/// Arbitrary-precision rational; every scalar in the toolkit is one of these.
using Rational = mpq_class;
using Integer = mpz_class;

/// num/den in canonical form. den must be nonzero.
Rational make_rational(long num, long den);

/// Parses "p/q" or a bare integer ("-3", "+7"). Surrounding whitespace is
/// ignored. Throws ParseError on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

/// Comma-separated list of rationals, e.g. "1,5/2".
std::vector<Rational> parse_rational_list(std::string_view text);

/// Canonical "p/q" form, or "p" when the denominator is 1.
std::string to_string(const Rational& value);
std::string to_string(const std::vector<Rational>& values);

bool is_integer(const Rational& value);
bool all_integer(const std::vector<Rational>& values);

/// Least common multiple of the denominators.
Integer common_denominator(const std::vector<Rational>& values);

/// gcd of the numerators of an integral vector; 0 for the zero vector.
Integer content(const std::vector<Rational>& values);

}  // namespace cy3
