#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace tcmap {

/* Always canonical: positive denominator, reduced, zero is 0/1. */
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/* Accepts "p" or "p/q" with optional sign on p. Throws ParseError on a zero
 * denominator or any non-digit character. */
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

/* (-1)^(a*b) */
inline int koszul_sign(int a, int b) { return ((a & 1) && (b & 1)) ? -1 : 1; }

}  // namespace tcmap
