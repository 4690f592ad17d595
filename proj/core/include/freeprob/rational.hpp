#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace freeprob {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Parses "p/q", an integer, or a finite decimal ("0.25", "-1.5e-2") into an
/// exact rational. Decimals are read as the exact decimal fraction.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers print without a denominator.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// Exact power with integer exponent (negative exponents invert).
Rational pow(const Rational& base, int exponent);

BigInt binomial(unsigned n, unsigned k);
BigInt catalan(unsigned n);
BigInt factorial(unsigned n);

} // namespace freeprob
