#ifndef SEPPROB_NUMERIC_BIGFLOAT_HPP
#define SEPPROB_NUMERIC_BIGFLOAT_HPP

#include <mpfr.h>

#include <iosfwd>
#include <string>
#include <string_view>

#include "sepprob/numeric/rational.hpp"

namespace sepprob {

/// Binary precision needed to carry `digits` significant decimal digits.
long digits_to_bits(int digits);

/// Thread-local precision used for values built without an explicit precision
/// (literals, Eigen temporaries). Restored on scope exit.
class PrecisionScope {
 public:
  explicit PrecisionScope(int digits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

  static int current_digits();

 private:
  int saved_;
};

/// Arbitrary-precision binary float with its own precision. Binary operations
/// round to the larger of the operand precisions.
class BigFloat {
 public:
  BigFloat();
  BigFloat(int v);     // NOLINT(google-explicit-constructor): Eigen needs Scalar(0)
  BigFloat(long v);    // NOLINT
  BigFloat(double v);  // NOLINT
  BigFloat(const BigRational& q, int digits);
  BigFloat(const BigInt& n, int digits);
  static BigFloat parse(std::string_view decimal, int digits);
  static BigFloat with_bits(long bits);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  int digits() const;
  long bits() const { return static_cast<long>(mpfr_get_prec(value_)); }
  BigFloat rounded_to(int digits) const;

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }
  /// floor(log2|x|) + 1; meaningless for zero.
  long binary_exponent() const { return static_cast<long>(mpfr_get_exp(value_)); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Exact value of the binary float.
  BigRational to_rational() const;
  /// Correctly rounded, fixed-point, `sig_figs` significant figures.
  std::string to_string(int sig_figs) const;

  BigFloat& operator+=(const BigFloat& rhs);
  BigFloat& operator-=(const BigFloat& rhs);
  BigFloat& operator*=(const BigFloat& rhs);
  BigFloat& operator/=(const BigFloat& rhs);
  BigFloat operator-() const;

  friend BigFloat operator+(BigFloat lhs, const BigFloat& rhs) { return lhs += rhs; }
  friend BigFloat operator-(BigFloat lhs, const BigFloat& rhs) { return lhs -= rhs; }
  friend BigFloat operator*(BigFloat lhs, const BigFloat& rhs) { return lhs *= rhs; }
  friend BigFloat operator/(BigFloat lhs, const BigFloat& rhs) { return lhs /= rhs; }

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend bool operator!=(const BigFloat& a, const BigFloat& b) { return !(a == b); }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return b < a; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return b <= a; }

  mpfr_srcptr get_mpfr_t() const { return value_; }
  mpfr_ptr get_mpfr_t() { return value_; }

 private:
  explicit BigFloat(long bits, std::nullptr_t);
  mpfr_t value_;
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat pow(const BigFloat& x, long n);
/// 10^e at the given precision.
BigFloat pow10f(long e, int digits);

std::ostream& operator<<(std::ostream& os, const BigFloat& x);

/// Midpoint with an absolute error bound.
struct BoundedValue {
  BigFloat midpoint;
  BigFloat radius;

  bool contains(const BigFloat& x) const { return abs(x - midpoint) <= radius; }
};

}  // namespace sepprob

#endif  // SEPPROB_NUMERIC_BIGFLOAT_HPP
