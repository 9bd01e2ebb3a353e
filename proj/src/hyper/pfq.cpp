#include "sepprob/hyper/pfq.hpp"

#include <algorithm>
#include <cmath>

#include "sepprob/errors.hpp"

namespace sepprob {

namespace {

/// m when q = -m for an integer m >= 0.
std::optional<unsigned long> nonpositive_integer(const BigRational& q) {
  if (q.get_den() != 1 || q > 0) return std::nullopt;
  BigInt m = -q.get_num();
  if (!m.fits_ulong_p()) return std::nullopt;
  return m.get_ui();
}

std::string join(const std::vector<BigRational>& xs) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + to_string(xs[i]);
  return out;
}

/// t_{n+1} / t_n.
BigRational term_ratio(const HypergeometricSpec& s, unsigned long n) {
  BigRational r = s.z / BigRational(n + 1);
  for (const auto& a : s.upper) r *= a + n;
  for (const auto& b : s.lower) r /= b + n;
  return r;
}

/// Upper bound on |t_{m+1} / t_m| over all m >= n, or nullopt when the
/// pairing argument does not apply yet (n not past every parameter).
std::optional<BigRational> ratio_bound(const HypergeometricSpec& s, unsigned long n) {
  // denominators m + beta: the lower parameters and the 1 of m + 1
  std::vector<BigRational> betas(s.lower);
  betas.emplace_back(1);
  for (const auto& b : betas)
    if (b + n <= 0) return std::nullopt;
  BigRational r = abs(s.z);
  const size_t paired = s.upper.size();
  for (size_t i = 0; i < betas.size(); ++i) {
    const BigRational m(static_cast<long>(n));
    if (i < paired) {
      // (m + |a|) / (m + beta) tends to 1 monotonically; its sup over m >= n
      // is the value at n when |a| >= beta and 1 otherwise
      BigRational f = (m + abs(s.upper[i])) / (m + betas[i]);
      if (f > 1) r *= f;
    } else {
      r /= m + betas[i];
    }
  }
  return r;
}

CertifiedValue exact_result(const BigRational& v, int digits, size_t terms) {
  CertifiedValue out;
  out.exact = v;
  out.terms = terms;
  const int wd = digits + 10 + static_cast<int>(std::max<long>(0, v == 0 ? 0 : floor_log10(abs(v)) + 1));
  out.value.midpoint = BigFloat(v, wd);
  out.value.radius = BigFloat(0);
  return out;
}

CertifiedValue sum_exact(const HypergeometricSpec& s, int digits, unsigned long start_check) {
  const BigRational target = pow10q(-digits) / 2;
  BigRational term = 1, sum = 0, tail;
  unsigned long n = 0;
  for (;;) {
    sum += term;
    term *= term_ratio(s, n);
    ++n;
    if (n < start_check) continue;
    auto r = ratio_bound(s, n);
    if (!r || *r >= 1) continue;
    tail = abs(term) / (1 - *r);
    if (tail <= target) break;
  }
  CertifiedValue out;
  out.terms = n;
  const int wd = digits + 10 + static_cast<int>(std::max<long>(0, sum == 0 ? 0 : floor_log10(abs(sum)) + 1));
  out.value.midpoint = BigFloat(sum, wd);
  const BigRational conversion = abs(out.value.midpoint.to_rational() - sum);
  // widen by a relative 1e-15 so the rounded radius still encloses
  out.value.radius = BigFloat((tail + conversion) * BigRational(1000000000000001, 1000000000000000), 20);
  return out;
}

CertifiedValue sum_float(const HypergeometricSpec& s, int digits, unsigned long start_check) {
  const BigRational target = pow10q(-digits);
  int guard = 20;
  for (int attempt = 0; attempt < 6; ++attempt, guard += 30) {
    const int wd = digits + guard;
    const long bits = digits_to_bits(wd);
    const BigFloat unit(BigRational(BigInt(1), BigInt(1) << static_cast<unsigned long>(bits - 1)), 30);
    BigFloat term(BigRational(1), wd), sum(BigRational(0), wd), abs_sum(BigRational(0), wd);
    BigRational tail_r;
    unsigned long n = 0;
    const BigFloat half_target(target / 2, 30);
    for (;;) {
      sum += term;
      abs_sum += abs(term);
      term *= BigFloat(term_ratio(s, n), wd);
      ++n;
      if (n < start_check) continue;
      auto r = ratio_bound(s, n);
      if (!r || *r >= 1) continue;
      // |t_N| <= |computed t_N| (1 + 2.1 N u); the factor 1 + 1e-10 covers it
      BigFloat tail = abs(term) * BigFloat(BigRational(10000000001, 10000000000), 30) / BigFloat(1 - *r, 30);
      if (tail <= half_target) {
        tail_r = tail.to_rational();
        break;
      }
    }
    // each term carries relative error <= 2.1 n u and each addition adds at
    // most u |partial sum|; 4 N u sum|t_n| covers both
    BigFloat rounding = BigFloat(static_cast<long>(4 * n + 8)) * unit * abs_sum;
    BigRational radius = tail_r + rounding.to_rational();
    radius *= BigRational(1000000000000001, 1000000000000000);
    if (radius > target) continue;
    CertifiedValue out;
    out.terms = n;
    out.float_path = true;
    out.value.midpoint = sum;
    out.value.radius = BigFloat(radius, 20);
    return out;
  }
  throw NumericalError("pfq_eval: could not certify " + std::to_string(digits) + " digits for " + s.describe());
}

}  // namespace

std::string HypergeometricSpec::describe() const {
  return std::to_string(upper.size()) + "F" + std::to_string(lower.size()) + "(" + join(upper) + "; " + join(lower) +
         "; " + to_string(z) + ")";
}

CertifiedValue pfq_eval(const HypergeometricSpec& spec, int digits) {
  if (digits < 1) throw InputError("pfq_eval: digits must be >= 1");
  if (spec.z == 0) return exact_result(BigRational(1), digits, 1);

  std::optional<unsigned long> stop;
  for (const auto& a : spec.upper)
    if (auto m = nonpositive_integer(a)) stop = stop ? std::min(*stop, *m) : *m;
  for (size_t j = 0; j < spec.lower.size(); ++j) {
    const auto& b = spec.lower[j];
    if (b.get_den() == 1 && b <= 0) {
      auto mb = nonpositive_integer(b);
      if (!stop || !mb || *mb < *stop)
        throw ParameterPole("pfq_eval: lower parameter " + std::to_string(j + 1) + " = " + to_string(b) +
                                " is a nonpositive integer reached before the series terminates",
                            "lower[" + std::to_string(j + 1) + "]");
    }
  }

  if (stop) {
    // terms n = 0..m; t_{m+1} has the factor (a)_{m+1} = 0
    BigRational term = 1, sum = 0;
    for (unsigned long n = 0; n <= *stop; ++n) {
      sum += term;
      if (n < *stop) term *= term_ratio(spec, n);
    }
    return exact_result(sum, digits, *stop + 1);
  }

  const size_t p = spec.upper.size(), q = spec.lower.size();
  if (p > q + 1) throw InputError("pfq_eval: " + spec.describe() + " diverges (p > q + 1, nonterminating)");
  if (p == q + 1 && abs(spec.z) >= 1)
    throw InputError("pfq_eval: " + spec.describe() + " needs |z| < 1 (nonterminating)");

  // the pairing bound applies once n is past every parameter magnitude
  BigRational biggest = 1;
  for (const auto& a : spec.upper) biggest = std::max(biggest, BigRational(abs(a)));
  for (const auto& b : spec.lower) biggest = std::max(biggest, BigRational(abs(b)));
  const unsigned long start_check = BigInt(biggest.get_num() / biggest.get_den()).get_ui() + 2;

  if (digits <= kExactSumDigits) return sum_exact(spec, digits, start_check);
  return sum_float(spec, digits, start_check);
}

}  // namespace sepprob
