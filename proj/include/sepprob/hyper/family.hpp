#ifndef SEPPROB_HYPER_FAMILY_HPP
#define SEPPROB_HYPER_FAMILY_HPP

#include <array>
#include <string>

#include "sepprob/hyper/pfq.hpp"

namespace sepprob {

/// The six 7F6 functions at z = 27/64 that differ only in the first upper
/// parameter k:
///   7F6(k, a+2/5, a+3/5, a+4/5, a+5/6, a+7/6, a+6/5;
///          a+13/10, a+3/2, a+17/10, a+19/10, a+2, a+21/10; 27/64)
struct FamilyMember {
  int k = 1;
  BigRational alpha;

  static constexpr int kCount = 6;
  static const std::array<BigRational, 6>& upper_shifts();  // after the leading k
  static const std::array<BigRational, 6>& lower_shifts();
  static BigRational argument();  // 27/64

  HypergeometricSpec spec() const;
};

/// pfq_eval of the member. A pole is reported with the offending parameter
/// written as "alpha+17/10" and so on.
CertifiedValue family_member_eval(const BigRational& alpha, int k, int digits);

}  // namespace sepprob

#endif  // SEPPROB_HYPER_FAMILY_HPP
