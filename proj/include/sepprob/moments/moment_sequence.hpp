#ifndef SEPPROB_MOMENTS_MOMENT_SEQUENCE_HPP
#define SEPPROB_MOMENTS_MOMENT_SEQUENCE_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sepprob/numeric/rational.hpp"

namespace sepprob {

struct Interval {
  BigRational lower;
  BigRational upper;
};

/// Support of det(rho^PT) over 4x4 density matrices: [-1/16, 1/256].
Interval determinant_support();

/// Raw moments <x^n>, n = 0..size-1, of a distribution on `interval`.
struct MomentSequence {
  BigRational alpha;
  Interval interval = determinant_support();
  std::vector<BigRational> moments;
  std::string source;
  bool from_decimals = false;  // some entries were written as decimals

  size_t size() const { return moments.size(); }

  /// Throws InputError unless moments[0] == 1, lower < upper, and every
  /// |moments[n]| <= max(|lower|, |upper|)^n.
  void validate() const;
};

/// {"alpha": "1/2", "interval": ["-1/16", "1/256"], "moments": ["1", "p/q", ...], "source": "..."}
/// Decimal entries are rejected unless `allow_decimals`.
MomentSequence parse_moment_json(std::string_view text, bool allow_decimals = false);
MomentSequence load_moment_file(const std::filesystem::path& path, bool allow_decimals = false);
std::string to_moment_json(const MomentSequence& ms);

}  // namespace sepprob

#endif  // SEPPROB_MOMENTS_MOMENT_SEQUENCE_HPP
