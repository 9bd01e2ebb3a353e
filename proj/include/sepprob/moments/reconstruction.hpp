#ifndef SEPPROB_MOMENTS_RECONSTRUCTION_HPP
#define SEPPROB_MOMENTS_RECONSTRUCTION_HPP

#include <optional>
#include <string>
#include <vector>

#include "sepprob/moments/legendre.hpp"
#include "sepprob/moments/moment_sequence.hpp"
#include "sepprob/numeric/bigfloat.hpp"

namespace sepprob {

enum class Arithmetic { Exact, Float };

struct ReconstructionMode {
  Arithmetic arithmetic = Arithmetic::Exact;
  int digits = 0;  // result digits in Float mode

  static ReconstructionMode exact() { return {Arithmetic::Exact, 0}; }
  static ReconstructionMode floating(int digits) { return {Arithmetic::Float, digits}; }
};

/// mu_j = <u^j> with u = (2x - a - b) / (b - a), by exact binomial expansion.
/// On [-1/16, 1/256] this is u = (512 x + 15) / 17.
std::vector<BigRational> shift_moments(const MomentSequence& ms);

/// The interval coordinate u(x) = (2x - a - b) / (b - a).
BigRational interval_coordinate(const Interval& interval, const BigRational& x);

/// Truncated Legendre density g(u) = sum_k lambda_k P_k(u) on [-1, 1],
/// lambda_k = (2k+1)/2 <P_k(u)>. lambda_0 = 1/2 for any normalized input.
template <typename Scalar>
struct LegendreReconstruction {
  int degree = 0;
  std::vector<Scalar> lambda;
  Interval interval;
  int working_digits = 0;  // precision of lambda in Float mode

  Scalar to_scalar(const BigRational& q) const {
    if constexpr (std::is_same_v<Scalar, BigRational>) {
      return q;
    } else {
      return Scalar(q, working_digits);
    }
  }

  Scalar u_of(const BigRational& x) const { return to_scalar(interval_coordinate(interval, x)); }

  /// g(u), density with respect to u.
  Scalar density_u(const Scalar& u) const {
    std::vector<Scalar> p = legendre_values(u, degree);
    Scalar acc = to_scalar(BigRational(0));
    for (int k = 0; k <= degree; ++k) acc += lambda[k] * p[k];
    return acc;
  }

  /// Density with respect to x: g(u(x)) * 2 / (b - a).
  Scalar density(const BigRational& x) const {
    return density_u(u_of(x)) * to_scalar(BigRational(2) / (interval.upper - interval.lower));
  }
};

using ExactReconstruction = LegendreReconstruction<BigRational>;
using FloatReconstruction = LegendreReconstruction<BigFloat>;

/// Precision carried through a Float-mode reconstruction of `degree` so that
/// `digits` survive: the Legendre coefficient vectors reach (1 + sqrt 2)^degree.
int float_working_digits(int digits, int degree);

ExactReconstruction reconstruct_exact(const MomentSequence& ms, int degree, LegendreCache* cache = nullptr);
FloatReconstruction reconstruct_float(const MomentSequence& ms, int degree, int digits);

/// Exact monomial coefficients of g(u), index = power of u.
std::vector<BigRational> monomial_coefficients(const ExactReconstruction& rec);

/// Probability mass of the reconstruction on [c, d], a <= c <= d <= b, using
/// int P_k = (P_{k+1} - P_{k-1}) / (2k+1). Exactly 1 on [a, b].
template <typename Scalar>
Scalar interval_probability(const LegendreReconstruction<Scalar>& rec, const BigRational& c, const BigRational& d) {
  const Interval& iv = rec.interval;
  if (c < iv.lower || d > iv.upper || c > d)
    throw InputError("interval_probability: [" + to_string(c) + ", " + to_string(d) + "] is not inside [" +
                     to_string(iv.lower) + ", " + to_string(iv.upper) + "]");
  const Scalar u1 = rec.u_of(c), u2 = rec.u_of(d);
  const std::vector<Scalar> p1 = legendre_values(u1, rec.degree + 1);
  const std::vector<Scalar> p2 = legendre_values(u2, rec.degree + 1);
  Scalar total = rec.lambda[0] * (u2 - u1);
  for (int k = 1; k <= rec.degree; ++k) {
    Scalar delta = (p2[k + 1] - p1[k + 1]) - (p2[k - 1] - p1[k - 1]);
    total += rec.lambda[k] * delta / rec.to_scalar(BigRational(2 * k + 1));
  }
  return total;
}

struct Estimate {
  std::optional<BigRational> exact;  // Exact mode only
  BigFloat value;
  int digits = 0;

  /// Exact mode: correctly rounded from the rational; Float mode: at most `digits`.
  std::string decimal(int sig_figs) const;
};

/// Mass of the reconstruction on [0, upper]: the separability probability for
/// the determinant support.
Estimate separability_probability(const MomentSequence& ms, int degree, ReconstructionMode mode,
                                  LegendreCache* cache = nullptr);

struct TraceRow {
  int degree = 0;
  Estimate estimate;
};

struct ConvergenceTrace {
  ReconstructionMode mode;
  std::vector<TraceRow> rows;
  std::vector<std::string> warnings;

  /// degree,estimate_rational,estimate_decimal (20 significant digits)
  std::string to_csv() const;
};

/// One row per requested degree; the Legendre moments are computed once for
/// the largest degree and the cumulative is accumulated term by term.
ConvergenceTrace convergence_trace(const MomentSequence& ms, std::vector<int> degrees, ReconstructionMode mode,
                                   LegendreCache* cache = nullptr);

}  // namespace sepprob

#endif  // SEPPROB_MOMENTS_RECONSTRUCTION_HPP
