#include "sepprob/numeric/rational.hpp"

#include <cctype>
#include <string>

#include "sepprob/errors.hpp"

namespace sepprob {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

bool looks_like_rational(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  auto slash = body.find('/');
  if (slash == std::string_view::npos) return all_digits(body);
  return all_digits(body.substr(0, slash)) && all_digits(body.substr(slash + 1));
}

BigRational parse_rational(std::string_view text) {
  if (!looks_like_rational(text))
    throw InputError("not a rational literal \"p/q\": '" + std::string(text) + "'");
  bool negative = text.front() == '-';
  std::string_view body = negative ? text.substr(1) : text;
  auto slash = body.find('/');
  BigInt num(std::string(body.substr(0, slash)), 10);
  BigInt den(1);
  if (slash != std::string_view::npos) den = BigInt(std::string(body.substr(slash + 1)), 10);
  if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  if (negative) num = -num;
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

DecimalLiteral parse_decimal(std::string_view text) {
  const std::string original(text);
  auto fail = [&]() -> DecimalLiteral {
    throw InputError("not a decimal literal: '" + original + "'");
  };
  DecimalLiteral out;
  std::string_view s = text;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    out.negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 9) return fail();
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string_view int_part = s, frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) return fail();
  if (!int_part.empty() && !all_digits(int_part)) return fail();
  if (!frac_part.empty() && !all_digits(frac_part)) return fail();

  std::string digits = std::string(int_part) + std::string(frac_part);
  auto first_nonzero = digits.find_first_not_of('0');
  out.significant_digits =
      first_nonzero == std::string::npos ? 0 : static_cast<int>(digits.size() - first_nonzero);
  long scale = static_cast<long>(frac_part.size()) - exponent;
  out.fractional_digits = static_cast<int>(scale < 0 ? 0 : scale);
  BigInt mantissa(digits.empty() ? std::string("0") : digits, 10);
  out.value = BigRational(mantissa) * pow10q(-scale);
  if (out.negative) out.value = -out.value;
  return out;
}

BigRational parse_number(std::string_view text) {
  if (looks_like_rational(text)) return parse_rational(text);
  return parse_decimal(text).value;
}

std::string to_string(const BigRational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

BigInt pow10(unsigned exponent) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, exponent);
  return r;
}

BigRational pow10q(long exponent) {
  if (exponent >= 0) return BigRational(pow10(static_cast<unsigned>(exponent)));
  return BigRational(BigInt(1), pow10(static_cast<unsigned>(-exponent)));
}

int decimal_digits(const BigInt& n) {
  if (n == 0) return 1;
  BigInt a = abs(n);
  return static_cast<int>(a.get_str().size());
}

long floor_log10(const BigRational& x) {
  BigRational a = abs(x);
  long e = static_cast<long>(decimal_digits(a.get_num())) -
           static_cast<long>(decimal_digits(a.get_den()));
  // digit counts give e within one of the answer
  while (a < pow10q(e)) --e;
  while (a >= pow10q(e + 1)) ++e;
  return e;
}

BigRational pow(const BigRational& base, unsigned exponent) {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  return BigRational(num, den);  // already coprime
}

}  // namespace sepprob
