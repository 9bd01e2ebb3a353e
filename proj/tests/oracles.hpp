// Independent reference computations used only by the tests. Nothing here
// calls into the library code paths it is used to check.
#ifndef SEPPROB_TESTS_ORACLES_HPP
#define SEPPROB_TESTS_ORACLES_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Z = mpz_class;
using Poly = std::vector<Q>;  // index = power

inline Poly multiply(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, Q(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline Q qpow(const Q& x, unsigned n) {
  Q r = 1;
  for (unsigned i = 0; i < n; ++i) r *= x;
  return r;
}

inline Q evaluate(const Poly& p, const Q& x) {
  Q acc = 0;
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

/// int_lo^hi x^n p(x) dx in closed form.
inline Q integrate_times_power(const Poly& p, unsigned n, const Q& lo, const Q& hi) {
  Q total = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    unsigned e = n + static_cast<unsigned>(i) + 1;
    total += p[i] * (qpow(hi, e) - qpow(lo, e)) / Q(e);
  }
  return total;
}

/// p(alpha x + beta) expanded in x.
inline Poly compose_affine(const Poly& p, const Q& alpha, const Q& beta) {
  Poly out{Q(0)};
  Poly power{Q(1)};
  const Poly lin{beta, alpha};
  for (size_t i = 0; i < p.size(); ++i) {
    if (i > 0) power = multiply(power, lin);
    if (out.size() < power.size()) out.resize(power.size(), Q(0));
    for (size_t j = 0; j < power.size(); ++j) out[j] += p[i] * power[j];
  }
  return out;
}

/// Unnormalized cubic (x - a)^2 (b - x).
inline Poly cubic_density(const Q& a, const Q& b) {
  return multiply(multiply(Poly{-a, Q(1)}, Poly{-a, Q(1)}), Poly{b, Q(-1)});
}

/// Legendre P_k by Rodrigues: (1 / (2^k k!)) d^k/dt^k (t^2 - 1)^k.
inline Poly rodrigues_legendre(unsigned k) {
  Poly out(k + 1, Q(0));
  Z fact_k;
  mpz_fac_ui(fact_k.get_mpz_t(), k);
  for (unsigned i = 0; i <= k; ++i) {
    if (2 * i < k) continue;
    Z binom, falling = 1;
    mpz_bin_uiui(binom.get_mpz_t(), k, i);
    for (unsigned m = 0; m < k; ++m) falling *= Z(2 * i - m);
    Q c(binom * falling, Z(1) << k);
    c.canonicalize();
    c /= Q(fact_k);
    if ((k - i) % 2) c = -c;
    out[2 * i - k] = c;
  }
  return out;
}

/// Partial sums of pFq by the plain term recurrence in rationals, stopping
/// after `terms` terms.
inline Q pfq_partial_sum(const std::vector<Q>& upper, const std::vector<Q>& lower, const Q& z, unsigned terms) {
  Q term = 1, sum = 0;
  for (unsigned n = 0; n < terms; ++n) {
    sum += term;
    Q ratio = z / Q(n + 1);
    for (const auto& a : upper) ratio *= a + n;
    for (const auto& b : lower) ratio /= b + n;
    term *= ratio;
  }
  return sum;
}

/// Long division of p/q to `digits` digits after the point, truncated.
inline std::string long_division(Z p, const Z& q, int digits) {
  std::string out = p < 0 ? "-" : "";
  p = abs(p);
  Z whole = p / q;
  Z rem = p % q;
  out += whole.get_str() + ".";
  for (int i = 0; i < digits; ++i) {
    rem *= 10;
    out += static_cast<char>('0' + Z(rem / q).get_ui());
    rem %= q;
  }
  return out;
}

/// Value of an MPFR expression as a decimal string with `digits` significant digits.
inline std::string mpfr_digits(mpfr_srcptr x, int digits, mpfr_rnd_t rnd = MPFR_RNDN) {
  mpfr_exp_t exp = 0;
  char* s = mpfr_get_str(nullptr, &exp, 10, static_cast<size_t>(digits), x, rnd);
  std::string mant(s);
  mpfr_free_str(s);
  bool neg = !mant.empty() && mant[0] == '-';
  if (neg) mant.erase(0, 1);
  std::string out;
  if (exp <= 0) {
    out = "0." + std::string(static_cast<size_t>(-exp), '0') + mant;
  } else if (static_cast<size_t>(exp) >= mant.size()) {
    out = mant + std::string(static_cast<size_t>(exp) - mant.size(), '0');
  } else {
    out = mant.substr(0, static_cast<size_t>(exp)) + "." + mant.substr(static_cast<size_t>(exp));
  }
  return (neg ? "-" : "") + out;
}

/// Gamma-function composites computed straight from MPFR.
struct MpfrConstants {
  mpfr_prec_t prec;
  explicit MpfrConstants(int digits) : prec(static_cast<mpfr_prec_t>(digits * 3.33) + 64) {}

  std::string c1(int digits) const {  // Gamma(1/4)^2 / (sqrt(2) pi^(3/2))
    mpfr_t g, pi, t;
    mpfr_inits2(prec, g, pi, t, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_ui(g, 1, MPFR_RNDN);
    mpfr_div_ui(g, g, 4, MPFR_RNDN);
    mpfr_gamma(g, g, MPFR_RNDN);
    mpfr_sqr(g, g, MPFR_RNDN);
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_pow_ui(t, pi, 3, MPFR_RNDN);
    mpfr_sqrt(t, t, MPFR_RNDN);
    mpfr_div(g, g, t, MPFR_RNDN);
    mpfr_set_ui(t, 2, MPFR_RNDN);
    mpfr_sqrt(t, t, MPFR_RNDN);
    mpfr_div(g, g, t, MPFR_RNDN);
    std::string out = oracle::mpfr_digits(g, digits);
    mpfr_clears(g, pi, t, static_cast<mpfr_ptr>(nullptr));
    return out;
  }

  /// Gamma(1/3)^3 / pi^2 raised to `sign` (+1 or -1), times sqrt(3) if asked.
  std::string gamma_third_cubed_over_pi2(int digits, int sign, bool with_sqrt3) const {
    mpfr_t g, pi, t;
    mpfr_inits2(prec, g, pi, t, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_ui(g, 1, MPFR_RNDN);
    mpfr_div_ui(g, g, 3, MPFR_RNDN);
    mpfr_gamma(g, g, MPFR_RNDN);
    mpfr_pow_ui(g, g, 3, MPFR_RNDN);
    mpfr_const_pi(pi, MPFR_RNDN);
    if (sign > 0) {
      mpfr_sqr(t, pi, MPFR_RNDN);
      mpfr_div(g, g, t, MPFR_RNDN);
    } else {
      mpfr_div(g, pi, g, MPFR_RNDN);
    }
    if (with_sqrt3) {
      mpfr_set_ui(t, 3, MPFR_RNDN);
      mpfr_sqrt(t, t, MPFR_RNDN);
      mpfr_mul(g, g, t, MPFR_RNDN);
    }
    std::string out = oracle::mpfr_digits(g, digits);
    mpfr_clears(g, pi, t, static_cast<mpfr_ptr>(nullptr));
    return out;
  }
};

/// Exact value of a plain decimal string such as "-12.5".
inline Q decimal_to_q(std::string s) {
  bool neg = !s.empty() && s[0] == '-';
  if (neg) s.erase(0, 1);
  const size_t dot = s.find('.');
  std::string frac = dot == std::string::npos ? "" : s.substr(dot + 1);
  std::string whole = dot == std::string::npos ? s : s.substr(0, dot);
  Z den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
  Q v(Z(whole + frac, 10), den);
  v.canonicalize();
  return neg ? Q(-v) : v;
}

/// a + b * c, with c given as a decimal string, rendered with `places` decimals (truncated).
inline std::string affine_decimal(const Q& a, const Q& b, const std::string& c, int places) {
  Q v = a + b * decimal_to_q(c);
  oracle::Z ten_p;
  mpz_ui_pow_ui(ten_p.get_mpz_t(), 10, static_cast<unsigned long>(places));
  oracle::Z t = v.get_num() * ten_p / v.get_den();  // truncation toward zero
  return oracle::long_division(t, ten_p, places);
}

}  // namespace oracle

#endif  // SEPPROB_TESTS_ORACLES_HPP
