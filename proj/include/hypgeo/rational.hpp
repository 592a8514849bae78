#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hypgeo {

// Exact rational. gmpxx keeps results of arithmetic canonical (lowest terms,
// positive denominator); values built from raw parts go through make_rational.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(const Integer& num, const Integer& den);

// "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& q);

// Accepts "p/q", an integer, or a finite decimal ("1.45", "-.5", "2e-3" is
// rejected). Throws std::invalid_argument on malformed text.
Rational parse_rational(std::string_view text);

bool is_integer(const Rational& q);

// True when q is 0 or a negative integer, i.e. a pole of the Pochhammer
// denominators.
bool is_nonpositive_integer(const Rational& q);

} // namespace hypgeo
