#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace maxapprox {

/// Exact rational scalar. Arithmetic results of mpq_class are always
/// canonical (positive denominator, coprime); construction and parsing go
/// through the helpers below so every value entering the system is too.
using Rational = mpq_class;
using Integer = mpz_class;
using Vector = std::vector<Rational>;

inline constexpr char kVersion[] = "1.0.0";

Rational rat(long num, long den = 1);
Rational rat(const Integer& num, const Integer& den);

/// Parses "p" or "p/q" (q > 0 after canonicalization). Throws
/// std::invalid_argument on malformed input or zero denominator.
Rational parse_rational(const std::string& text);

/// "p" when the value is integral, "p/q" otherwise.
std::string to_fraction_string(const Rational& q);

/// Shortest round-trip decimal of the nearest double.
std::string to_decimal_string(const Rational& q);

double to_double(const Rational& q);

/// base^exp for non-negative integer exponents.
Rational pow_rational(const Rational& base, unsigned exp);

Integer binomial(unsigned long n, unsigned long k);

}  // namespace maxapprox
