#include "sepprob/moments/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sepprob/numeric/decimal.hpp"
#include "sepprob/numeric/pochhammer.hpp"

namespace sepprob {
namespace {

void require_degree(const MomentSequence& ms, int degree) {
  if (degree < 0) throw InputError("reconstruct: degree must be >= 0");
  if (static_cast<size_t>(degree) >= ms.size())
    throw InsufficientMoments("reconstruct: degree " + std::to_string(degree) + " needs " +
                              std::to_string(degree + 1) + " moments, the sequence has " +
                              std::to_string(ms.size()));
}

void require_exact_input(const MomentSequence& ms) {
  if (ms.from_decimals)
    throw InputError("exact mode requires rational moments; the sequence contains decimals (use float mode)");
}

// Cumulative over [0, upper] term by term: term_k = lambda_k * int_{u(0)}^{1} P_k.
template <typename Scalar>
std::vector<Scalar> cumulative_terms(const LegendreReconstruction<Scalar>& rec) {
  const Interval& iv = rec.interval;
  if (iv.lower > 0 || iv.upper < 0)
    throw InputError("separability_probability: 0 is outside the moment interval");
  const Scalar u0 = rec.u_of(BigRational(0));
  const Scalar one = rec.to_scalar(BigRational(1));
  const std::vector<Scalar> p = legendre_values(u0, rec.degree + 1);
  std::vector<Scalar> terms;
  terms.reserve(rec.lambda.size());
  terms.push_back(rec.lambda[0] * (one - u0));
  for (int k = 1; k <= rec.degree; ++k) {
    // P_j(1) = 1, so the upper-endpoint contributions cancel
    Scalar delta = p[k - 1] - p[k + 1];
    terms.push_back(rec.lambda[k] * delta / rec.to_scalar(BigRational(2 * k + 1)));
  }
  return terms;
}

Estimate make_estimate(const BigRational& q) {
  Estimate e;
  e.exact = q;
  e.digits = 60;
  e.value = BigFloat(q, e.digits);
  return e;
}

Estimate make_estimate(const BigFloat& v, int digits) {
  Estimate e;
  e.digits = digits;
  e.value = v.rounded_to(digits);
  return e;
}

}  // namespace

BigRational interval_coordinate(const Interval& interval, const BigRational& x) {
  BigRational u = (2 * x - interval.lower - interval.upper) / (interval.upper - interval.lower);
  return u;
}

std::vector<BigRational> shift_moments(const MomentSequence& ms) {
  ms.validate();
  const Interval& iv = ms.interval;
  // u = (c1 x + c0) / D with integers c1, c0, D
  BigRational s = BigRational(2) / (iv.upper - iv.lower);
  BigRational t = -(iv.lower + iv.upper) / (iv.upper - iv.lower);
  const BigInt c1 = s.get_num() * t.get_den();
  const BigInt c0 = t.get_num() * s.get_den();
  const BigInt d = s.get_den() * t.get_den();

  // moments[i] = scaled[i] / common
  const size_t n = ms.size();
  BigInt common = 1;
  for (const auto& m : ms.moments) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), m.get_den_mpz_t());
  std::vector<BigInt> scaled(n);
  for (size_t i = 0; i < n; ++i) scaled[i] = ms.moments[i].get_num() * (common / ms.moments[i].get_den());

  std::vector<BigInt> pow1(n), pow0(n);
  pow1[0] = pow0[0] = 1;
  for (size_t i = 1; i < n; ++i) {
    pow1[i] = pow1[i - 1] * c1;
    pow0[i] = pow0[i - 1] * c0;
  }

  std::vector<BigRational> mu;
  mu.reserve(n);
  std::vector<BigInt> binom{BigInt(1)};
  BigInt dpow = 1;
  for (size_t j = 0; j < n; ++j) {
    if (j > 0) {
      // Pascal row j from row j-1
      std::vector<BigInt> next(j + 1);
      next[0] = next[j] = 1;
      for (size_t i = 1; i < j; ++i) next[i] = binom[i - 1] + binom[i];
      binom.swap(next);
      dpow *= d;
    }
    BigInt acc = 0;
    BigInt term;
    for (size_t i = 0; i <= j; ++i) {
      term = binom[i] * pow1[i];
      term *= pow0[j - i];
      mpz_addmul(acc.get_mpz_t(), term.get_mpz_t(), scaled[i].get_mpz_t());
    }
    BigRational q(acc, common * dpow);
    q.canonicalize();
    mu.push_back(std::move(q));
  }
  return mu;
}

int float_working_digits(int digits, int degree) {
  return digits + static_cast<int>(std::ceil(degree * std::log10(1.0 + std::sqrt(2.0)))) + 10;
}

ExactReconstruction reconstruct_exact(const MomentSequence& ms, int degree, LegendreCache* cache) {
  require_degree(ms, degree);
  require_exact_input(ms);
  MomentSequence head = ms;
  head.moments.resize(static_cast<size_t>(degree) + 1);
  const std::vector<BigRational> mu = shift_moments(head);
  std::shared_ptr<const LegendreTable> table = cache ? cache->get(degree) : nullptr;
  ExactReconstruction rec;
  rec.degree = degree;
  rec.interval = ms.interval;
  rec.lambda = legendre_moments_exact(mu, degree, table.get());
  for (int k = 0; k <= degree; ++k) rec.lambda[k] *= BigRational(2 * k + 1, 2);
  return rec;
}

FloatReconstruction reconstruct_float(const MomentSequence& ms, int degree, int digits) {
  require_degree(ms, degree);
  if (digits < 1) throw InputError("reconstruct: float mode needs digits >= 1");
  MomentSequence head = ms;
  head.moments.resize(static_cast<size_t>(degree) + 1);
  const int working = float_working_digits(digits, degree);
  const std::vector<BigRational> mu_exact = shift_moments(head);
  std::vector<BigFloat> mu;
  mu.reserve(mu_exact.size());
  for (const auto& q : mu_exact) mu.emplace_back(q, working);
  PrecisionScope scope(working);
  FloatReconstruction rec;
  rec.degree = degree;
  rec.interval = ms.interval;
  rec.working_digits = working;
  rec.lambda = legendre_moments<BigFloat>(mu, degree);
  for (int k = 0; k <= degree; ++k) rec.lambda[k] *= BigFloat(BigRational(2 * k + 1, 2), working);
  return rec;
}

std::vector<BigRational> monomial_coefficients(const ExactReconstruction& rec) {
  LegendreTable table(rec.degree);
  std::vector<BigRational> out(static_cast<size_t>(rec.degree) + 1, BigRational(0));
  for (int k = 0; k <= rec.degree; ++k) {
    auto c = table.coefficients(k);
    for (int j = 0; j <= k; ++j) out[j] += rec.lambda[k] * c[j];
  }
  return out;
}

std::string Estimate::decimal(int sig_figs) const {
  if (exact) return decimal_render(*exact, sig_figs);
  return value.to_string(std::min(sig_figs, digits));
}

Estimate separability_probability(const MomentSequence& ms, int degree, ReconstructionMode mode,
                                  LegendreCache* cache) {
  ConvergenceTrace trace = convergence_trace(ms, {degree}, mode, cache);
  return trace.rows.front().estimate;
}

ConvergenceTrace convergence_trace(const MomentSequence& ms, std::vector<int> degrees, ReconstructionMode mode,
                                   LegendreCache* cache) {
  if (degrees.empty()) throw InputError("convergence_trace: no degrees requested");
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  const int top = degrees.back();
  ConvergenceTrace trace;
  trace.mode = mode;

  if (mode.arithmetic == Arithmetic::Exact) {
    ExactReconstruction rec = reconstruct_exact(ms, top, cache);
    std::vector<BigRational> terms = cumulative_terms(rec);
    BigRational running = 0;
    size_t next = 0;
    for (int k = 0; k <= top && next < degrees.size(); ++k) {
      running += terms[k];
      if (k == degrees[next]) trace.rows.push_back({k, make_estimate(running)}), ++next;
    }
  } else {
    if (ms.from_decimals)
      trace.warnings.push_back("moments were supplied as decimals; results inherit their rounding");
    FloatReconstruction rec = reconstruct_float(ms, top, mode.digits);
    PrecisionScope scope(rec.working_digits);
    std::vector<BigFloat> terms = cumulative_terms(rec);
    BigFloat running = BigFloat::with_bits(digits_to_bits(rec.working_digits));
    size_t next = 0;
    for (int k = 0; k <= top && next < degrees.size(); ++k) {
      running += terms[k];
      if (k == degrees[next]) trace.rows.push_back({k, make_estimate(running, mode.digits)}), ++next;
    }
  }
  return trace;
}

std::string ConvergenceTrace::to_csv() const {
  std::ostringstream out;
  out << "degree,estimate_rational,estimate_decimal\n";
  for (const auto& row : rows) {
    out << row.degree << ',' << (row.estimate.exact ? to_string(*row.estimate.exact) : std::string()) << ','
        << row.estimate.decimal(20) << '\n';
  }
  return out.str();
}

}  // namespace sepprob
