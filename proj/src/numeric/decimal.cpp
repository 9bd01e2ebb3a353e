#include "sepprob/numeric/decimal.hpp"

#include "sepprob/errors.hpp"

namespace sepprob {
namespace {

// round(|x|) with ties away from zero
BigInt round_half_up(const BigRational& nonneg) {
  BigInt twice = (2 * nonneg.get_num() + nonneg.get_den());
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), BigInt(2 * nonneg.get_den()).get_mpz_t());
  return q;
}

}  // namespace

std::string decimal_render(const BigRational& x, int sig_figs) {
  if (sig_figs < 1) throw InputError("decimal_render: sig_figs must be >= 1");
  if (x == 0) return sig_figs == 1 ? "0" : "0." + std::string(sig_figs - 1, '0');

  BigRational a = abs(x);
  long e = floor_log10(a);
  BigInt n = round_half_up(a * pow10q(sig_figs - 1 - e));
  if (n == pow10(static_cast<unsigned>(sig_figs))) {
    n /= 10;
    ++e;
  }
  std::string digits = n.get_str();
  std::string body;
  if (e >= sig_figs - 1) {
    body = digits + std::string(static_cast<size_t>(e - (sig_figs - 1)), '0');
  } else if (e >= 0) {
    body = digits.substr(0, e + 1) + "." + digits.substr(e + 1);
  } else {
    body = "0." + std::string(static_cast<size_t>(-e - 1), '0') + digits;
  }
  return (x < 0 ? "-" : "") + body;
}

std::string fixed_render(const BigRational& x, int places) {
  if (places < 0) throw InputError("fixed_render: places must be >= 0");
  BigInt n = round_half_up(abs(x) * pow10q(places));
  std::string digits = n.get_str();
  if (digits.size() <= static_cast<size_t>(places))
    digits = std::string(places + 1 - digits.size(), '0') + digits;
  std::string body = places == 0 ? digits
                                 : digits.substr(0, digits.size() - places) + "." +
                                       digits.substr(digits.size() - places);
  return (x < 0 && n != 0 ? "-" : "") + body;
}

std::string scientific_render(const BigRational& x, int sig_figs) {
  if (sig_figs < 1) throw InputError("scientific_render: sig_figs must be >= 1");
  if (x == 0) return "0";
  long e = floor_log10(abs(x));
  std::string mant = decimal_render(x * pow10q(-e), sig_figs);
  // rounding can carry into a new leading digit: 9.99 -> 10.0
  const size_t lead = mant[0] == '-' ? 1 : 0;
  if (mant.compare(lead, 2, "10") == 0) {
    ++e;
    mant = decimal_render(x * pow10q(-e), sig_figs);
  }
  return mant + "e" + (e < 0 ? "-" : "+") + std::to_string(e < 0 ? -e : e);
}

}  // namespace sepprob
