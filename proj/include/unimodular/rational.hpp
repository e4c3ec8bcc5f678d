#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ul {

/// Exact rational used for every alphabet-constrained coefficient.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q" or an integer literal (optional sign, optional surrounding
/// blanks). Throws FormatError with the offending character offset.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when q = 1).
std::string format_rational(const Rational& q);

/// Locale-independent shortest round-trip form limited to 12 significant digits.
std::string format_real(double x);

/// x rounded to 12 significant digits, so JSON number output matches format_real.
double round12(double x);

int sign(const Rational& q);
int sign(const Integer& z);

} // namespace ul
