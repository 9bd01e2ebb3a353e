#ifndef SEPPROB_NUMERIC_RATIONAL_HPP
#define SEPPROB_NUMERIC_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace sepprob {

using BigInt = mpz_class;
/// GMP rationals are kept canonical (gcd 1, positive denominator) after every operation.
using BigRational = mpq_class;

/// Exact decimal literal together with the precision it was written with.
struct DecimalLiteral {
  BigRational value;
  int significant_digits = 0;  // digits from the first nonzero digit to the last written digit
  int fractional_digits = 0;   // digits after the decimal point, exponent applied
  bool negative = false;
};

/// Strict "p/q" or "p" form: optional leading minus, no whitespace, q > 0.
BigRational parse_rational(std::string_view text);

/// "[-]ddd[.ddd][e[+-]dd]", converted exactly.
DecimalLiteral parse_decimal(std::string_view text);

/// Accepts either a rational "p/q" or a decimal literal.
BigRational parse_number(std::string_view text);

bool looks_like_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const BigRational& value);

BigInt pow10(unsigned exponent);
BigRational pow10q(long exponent);

/// Number of decimal digits of |n|; 1 for zero.
int decimal_digits(const BigInt& n);

/// Largest e with 10^e <= |x|. Requires x != 0.
long floor_log10(const BigRational& x);

BigRational pow(const BigRational& base, unsigned exponent);

}  // namespace sepprob

#endif  // SEPPROB_NUMERIC_RATIONAL_HPP
