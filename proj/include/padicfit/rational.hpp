#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace padicfit {

// All arithmetic in the library is exact. BigInt and Rational are
// arbitrary-precision; Rational is always held in canonical form
// (gcd(|num|, den) = 1, den >= 1, zero is 0/1), which GMP maintains
// for every operation once a value has been canonicalised.
using BigInt = mpz_class;
using Rational = mpq_class;

/// num/den reduced to canonical form. Throws DomainError when den = 0.
Rational make_rational(const BigInt& num, const BigInt& den);

bool is_integer(const Rational& r);

/// Parses a decimal integer, optionally signed. Throws DomainError on junk.
BigInt parse_bigint(std::string_view text);

/// Parses "n" or "n/d" in decimal. Throws DomainError on junk or d = 0.
Rational parse_rational(std::string_view text);

/// Short decimal rendering (12 significant digits) for reports; the exact
/// fraction is always written alongside, so this is display-only.
std::string decimal_string(const Rational& r);
std::string decimal_string(double v);

}  // namespace padicfit
