#ifndef SEPPROB_PIPELINE_FITLINE_HPP
#define SEPPROB_PIPELINE_FITLINE_HPP

#include <string>
#include <vector>

#include "sepprob/numeric/bigfloat.hpp"
#include "sepprob/pipeline/table.hpp"

namespace sepprob {

struct FitlinePoint {
  BigRational alpha;
  BigFloat ln_p;
  BigFloat fitted;
  BigFloat residual;
};

/// ln P(alpha) fitted by s * alpha (least squares through the origin).
struct FitlineResult {
  BigFloat slope;
  std::vector<FitlinePoint> points;

  /// alpha,lnP,fitted,residual with 12 decimals.
  std::string csv() const;
  /// Scatter plus fitted line, and a residual panel below. Every plotted value
  /// is also written as a data- attribute.
  std::string svg() const;
};

/// Throws InputError for a nonpositive value or an empty table.
FitlineResult fitline(const ProbabilityTable& table, int digits = 60);

}  // namespace sepprob

#endif  // SEPPROB_PIPELINE_FITLINE_HPP
