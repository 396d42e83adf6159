#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace schmidt {

using Integer = mpz_class;
// gmp keeps mpq_class canonical (lowest terms, positive denominator) after
// every arithmetic operation.
using Rational = mpq_class;

// Accepts "p", "p/q", and finite decimals such as "-0.125" or "1.5e-3".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);  // always "num/den"

Integer floor(const Rational& q);
Integer ceil(const Rational& q);
Rational pow2(long e);
Rational pow(const Rational& q, long e);
Rational abs(const Rational& q);

// Bits needed for the larger of numerator and denominator.
std::size_t height_bits(const Rational& q);

}  // namespace schmidt
