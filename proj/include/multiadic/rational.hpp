#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace multiadic {

using Integer = mpz_class;
using Rational = mpq_class;

// Canonical num/den; throws DomainError on den == 0.
Rational make_rational(const Integer& num, const Integer& den);

// "num/den" always, even for integers ("3/1").
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

// Accepts "n", "n/d" (with optional sign). Throws DomainError otherwise.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

Integer ipow(const Integer& base, unsigned long exp);
Integer ipow(unsigned long base, unsigned long exp);
// Negative exponents allowed for nonzero base.
Rational rpow(const Rational& base, long exp);

Integer floor_of(const Rational& r);
Integer ceil_of(const Rational& r);

// Number of bits of |z|.
std::size_t bit_length(const Integer& z);

// a^-1 mod m, requires gcd(a,m) = 1.
Integer inverse_mod(const Integer& a, const Integer& m);
Integer powm(const Integer& base, const Integer& exp, const Integer& mod);

std::uint64_t to_u64(const Integer& z);

// Decimal with `digits` significant digits, for human-facing dumps only.
std::string to_decimal(const Rational& r, int digits = 20);

}  // namespace multiadic
