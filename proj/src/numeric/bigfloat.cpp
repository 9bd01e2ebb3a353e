#include "sepprob/numeric/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "sepprob/errors.hpp"
#include "sepprob/numeric/decimal.hpp"

namespace sepprob {
namespace {

thread_local int g_default_digits = 50;

constexpr long kMinBits = 64;

long default_bits() { return digits_to_bits(g_default_digits); }

}  // namespace

long digits_to_bits(int digits) {
  long bits = static_cast<long>(std::ceil(digits * 3.3219280948873623)) + 4;
  return std::max(bits, kMinBits);
}

PrecisionScope::PrecisionScope(int digits) : saved_(g_default_digits) {
  g_default_digits = std::max(digits, 1);
}
PrecisionScope::~PrecisionScope() { g_default_digits = saved_; }
int PrecisionScope::current_digits() { return g_default_digits; }

BigFloat::BigFloat(long bits, std::nullptr_t) { mpfr_init2(value_, bits); }

BigFloat::BigFloat() : BigFloat(default_bits(), nullptr) { mpfr_set_zero(value_, 1); }
BigFloat::BigFloat(int v) : BigFloat(default_bits(), nullptr) { mpfr_set_si(value_, v, MPFR_RNDN); }
BigFloat::BigFloat(long v) : BigFloat(default_bits(), nullptr) { mpfr_set_si(value_, v, MPFR_RNDN); }
BigFloat::BigFloat(double v) : BigFloat(default_bits(), nullptr) { mpfr_set_d(value_, v, MPFR_RNDN); }

BigFloat::BigFloat(const BigRational& q, int digits) : BigFloat(digits_to_bits(digits), nullptr) {
  mpfr_set_q(value_, q.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigInt& n, int digits) : BigFloat(digits_to_bits(digits), nullptr) {
  mpfr_set_z(value_, n.get_mpz_t(), MPFR_RNDN);
}

BigFloat BigFloat::parse(std::string_view decimal, int digits) {
  return BigFloat(parse_number(decimal), digits);
}

BigFloat BigFloat::with_bits(long bits) {
  BigFloat r(std::max(bits, kMinBits), nullptr);
  mpfr_set_zero(r.value_, 1);
  return r;
}

BigFloat::BigFloat(const BigFloat& other) : BigFloat(other.bits(), nullptr) {
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept : BigFloat(other.bits(), nullptr) {
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.bits());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

int BigFloat::digits() const {
  return static_cast<int>(std::floor((bits() - 4) / 3.3219280948873623));
}

BigFloat BigFloat::rounded_to(int digits) const {
  BigFloat r(digits_to_bits(digits), nullptr);
  mpfr_set(r.value_, value_, MPFR_RNDN);
  return r;
}

BigRational BigFloat::to_rational() const {
  if (!is_finite()) throw NumericalError("non-finite value cannot be converted to a rational");
  if (is_zero()) return BigRational(0);
  BigInt mantissa;
  mpfr_exp_t e = mpfr_get_z_2exp(mantissa.get_mpz_t(), value_);
  BigRational q(mantissa);
  if (e >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return q;
}

std::string BigFloat::to_string(int sig_figs) const {
  if (!is_finite()) return mpfr_nan_p(value_) ? "nan" : (sign() < 0 ? "-inf" : "inf");
  return decimal_render(to_rational(), sig_figs);
}

BigFloat& BigFloat::operator+=(const BigFloat& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& rhs) {
  if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat BigFloat::operator-() const {
  BigFloat r(*this);
  mpfr_neg(r.value_, r.value_, MPFR_RNDN);
  return r;
}

BigFloat abs(const BigFloat& x) {
  BigFloat r(x);
  mpfr_abs(r.get_mpfr_t(), r.get_mpfr_t(), MPFR_RNDN);
  return r;
}

BigFloat sqrt(const BigFloat& x) {
  BigFloat r(x);
  mpfr_sqrt(r.get_mpfr_t(), x.get_mpfr_t(), MPFR_RNDN);
  return r;
}

BigFloat log(const BigFloat& x) {
  BigFloat r(x);
  mpfr_log(r.get_mpfr_t(), x.get_mpfr_t(), MPFR_RNDN);
  return r;
}

BigFloat exp(const BigFloat& x) {
  BigFloat r(x);
  mpfr_exp(r.get_mpfr_t(), x.get_mpfr_t(), MPFR_RNDN);
  return r;
}

BigFloat pow(const BigFloat& x, long n) {
  BigFloat r(x);
  mpfr_pow_si(r.get_mpfr_t(), x.get_mpfr_t(), n, MPFR_RNDN);
  return r;
}

BigFloat pow10f(long e, int digits) {
  BigFloat r = BigFloat::with_bits(digits_to_bits(digits));
  mpfr_set_ui(r.get_mpfr_t(), 10, MPFR_RNDN);
  mpfr_pow_si(r.get_mpfr_t(), r.get_mpfr_t(), e, MPFR_RNDN);
  return r;
}

std::ostream& operator<<(std::ostream& os, const BigFloat& x) {
  auto p = os.precision();
  return os << x.to_string(static_cast<int>(p > 0 ? p : 6));
}

}  // namespace sepprob
