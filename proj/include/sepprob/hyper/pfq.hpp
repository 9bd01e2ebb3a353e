#ifndef SEPPROB_HYPER_PFQ_HPP
#define SEPPROB_HYPER_PFQ_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sepprob/numeric/bigfloat.hpp"
#include "sepprob/numeric/rational.hpp"

namespace sepprob {

struct HypergeometricSpec {
  std::vector<BigRational> upper;
  std::vector<BigRational> lower;
  BigRational z;

  std::string describe() const;
};

/// A value with a certified enclosure. `exact` is set when the result is known
/// exactly (z = 0, terminating series, or a degenerate formula).
struct CertifiedValue {
  BoundedValue value;
  std::optional<BigRational> exact;
  std::size_t terms = 0;
  bool float_path = false;  // summed in MPFR rather than exact rationals
};

/// At or below this many digits, partial sums are exact rationals.
inline constexpr int kExactSumDigits = 100;

/// Sum of the pFq series with |result - midpoint| <= radius <= 10^-digits.
/// The truncation error is bounded by |t_N| / (1 - r), where r majorizes every
/// later term ratio. Throws ParameterPole when a lower parameter is a
/// nonpositive integer reached before the series stops, and InputError for a
/// series that does not converge.
CertifiedValue pfq_eval(const HypergeometricSpec& spec, int digits);

}  // namespace sepprob

#endif  // SEPPROB_HYPER_PFQ_HPP
