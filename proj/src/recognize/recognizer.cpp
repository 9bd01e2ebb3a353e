#include "sepprob/recognize/recognizer.hpp"

#include <algorithm>
#include <cmath>

#include "sepprob/errors.hpp"
#include "sepprob/numeric/decimal.hpp"

namespace sepprob {

namespace {

int ndigits(const BigInt& n) { return n == 0 ? 1 : decimal_digits(abs(n)); }

/// Decimal places written in the literal.
int decimals_of(const DecimalLiteral& lit) { return std::max(lit.fractional_digits, 0); }

BigFloat residual_float(const BigRational& r) { return BigFloat(abs(r), 20); }

/// Digits of agreement implied by a residual, capped at `cap`.
double matched_digits(const BigRational& residual, int cap) {
  if (residual == 0) return cap;
  return std::min<double>(cap, static_cast<double>(-floor_log10(residual)) - 1);
}

}  // namespace

int specification_length(const BigRational& q) { return std::max(ndigits(q.get_num()), ndigits(q.get_den())); }

std::string RecognitionCandidate::describe() const {
  if (form == CandidateForm::Rational) return to_string(value);
  std::string out = to_string(a);
  out += b < 0 ? " - " : " + ";
  out += to_string(BigRational(abs(b))) + "*" + constant;
  return out;
}

std::optional<RecognitionCandidate> to_rational(std::string_view x, const BigInt& max_den) {
  if (max_den < 1) throw InputError("to_rational: max_den must be >= 1");
  const DecimalLiteral lit = parse_decimal(x);
  const BigRational& target = lit.value;
  const int n = decimals_of(lit);
  const BigRational tolerance = pow10q(-(n - 2));

  // convergents h/k of the exact rational value of the literal
  BigInt num = target.get_num(), den = target.get_den();
  BigInt h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
  while (den != 0) {
    BigInt a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    BigInt h = a * h_prev + h_prev2;
    BigInt k = a * k_prev + k_prev2;
    if (k > max_den) break;
    BigInt rem = num - a * den;
    num = den;
    den = rem;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;

    BigRational cand(h, k);
    cand.canonicalize();
    const BigRational residual = abs(target - cand);
    const bool exact = residual == 0;
    bool accept;
    if (exact) {
      accept = cand == 0 || ndigits(cand.get_num()) + ndigits(cand.get_den()) <= lit.significant_digits;
    } else {
      accept = n >= 2 * ndigits(cand.get_den()) + 6 && 2 * specification_length(cand) <= n && residual < tolerance;
    }
    if (!accept) continue;
    RecognitionCandidate out;
    out.form = CandidateForm::Rational;
    out.value = cand;
    out.residual = residual_float(residual);
    out.exact_match = exact;
    out.confidence = matched_digits(residual, exact ? std::max(lit.significant_digits, 1) : n) /
                     (ndigits(cand.get_num()) + ndigits(cand.get_den()));
    return out;
  }
  return std::nullopt;
}

namespace {

/// a + b*C at `digits` decimals of absolute accuracy (plus guard digits).
BigFloat affine_value(const RecognitionCandidate& c, int digits, const ConstantTable& table) {
  const NamedConstant& constant = table.at(c.constant);
  // relative digits needed for an absolute 10^-(digits+5) in b*C
  const long scale = std::max<long>(0, floor_log10(abs(c.b) + 1) + 1) + 1;
  const int sig = digits + 5 + static_cast<int>(scale);
  if (sig > constant.stored_digits())
    throw InputError("verify: constant '" + c.constant + "' is stored to " + std::to_string(constant.stored_digits()) +
                     " digits; " + std::to_string(sig) + " needed");
  const int work = sig + 10;
  return BigFloat(c.a, work) + BigFloat(c.b, work) * table.lookup(c.constant, sig);
}

}  // namespace

std::optional<RecognitionCandidate> recognize_affine(std::string_view x, std::string_view constant,
                                                     std::span<const BigRational> a_candidates, const BigInt& max_den,
                                                     const ConstantTable& table) {
  const NamedConstant& c = table.at(constant);
  const DecimalLiteral lit = parse_decimal(x);
  if (lit.significant_digits < 30)
    throw InputError("recognize_affine: input carries " + std::to_string(lit.significant_digits) +
                     " significant digits; at least 30 are required");
  const int n = decimals_of(lit);
  const int work = std::min(c.stored_digits(), lit.significant_digits + n + 10);
  const BigFloat cval = table.lookup(c.name, work);
  // (x - a)/C is known to about n - log10|C| decimals
  const long c_mag = -floor_log10(abs(cval.to_rational()));
  const int y_decimals = n - 1 - static_cast<int>(std::max<long>(0, c_mag));

  for (const BigRational& a : a_candidates) {
    BigFloat y = (BigFloat(lit.value, work + 5) - BigFloat(a, work + 5)) / cval;
    std::string y_text = fixed_render(y.to_rational(), y_decimals);
    std::optional<RecognitionCandidate> b = to_rational(y_text, max_den);
    if (!b) continue;
    RecognitionCandidate out;
    out.form = CandidateForm::Affine;
    out.a = a;
    out.b = b->value;
    out.constant = c.name;
    Verification v = verify(out, x, n, table);
    if (!v.ok) continue;
    out.residual = v.residual;
    const int needed = ndigits(a.get_num()) + ndigits(a.get_den()) + ndigits(out.b.get_num()) + ndigits(out.b.get_den());
    out.confidence = matched_digits(v.residual.to_rational(), n) / needed;
    return out;
  }
  return std::nullopt;
}

Verification verify(const RecognitionCandidate& candidate, std::string_view x, int digits, const ConstantTable& table) {
  if (digits < 1) throw InputError("verify: digits must be >= 1");
  const DecimalLiteral lit = parse_decimal(x);
  BigRational residual;
  if (candidate.form == CandidateForm::Rational) {
    residual = abs(lit.value - candidate.value);
  } else {
    BigFloat v = affine_value(candidate, digits, table);
    residual = abs(lit.value - v.to_rational());
  }
  const BigRational ulp = pow10q(-decimals_of(lit));
  Verification out;
  out.residual = residual_float(residual);
  out.ok = residual < pow10q(-(digits - 2)) && residual < ulp;
  return out;
}

}  // namespace sepprob
