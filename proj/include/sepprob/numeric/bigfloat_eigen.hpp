#ifndef SEPPROB_NUMERIC_BIGFLOAT_EIGEN_HPP
#define SEPPROB_NUMERIC_BIGFLOAT_EIGEN_HPP

#include <Eigen/Core>

#include "sepprob/numeric/bigfloat.hpp"

namespace Eigen {

// epsilon and dummy_precision follow the calling thread's PrecisionScope.
template <>
struct NumTraits<sepprob::BigFloat> : GenericNumTraits<sepprob::BigFloat> {
  using Real = sepprob::BigFloat;
  using NonInteger = sepprob::BigFloat;
  using Nested = sepprob::BigFloat;
  using Literal = sepprob::BigFloat;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 10,
    MulCost = 40
  };
  static Real epsilon() { return sepprob::pow10f(-sepprob::PrecisionScope::current_digits(), sepprob::PrecisionScope::current_digits()); }
  static Real dummy_precision() {
    int d = sepprob::PrecisionScope::current_digits();
    return sepprob::pow10f(-(d * 9) / 10, d);
  }
  static Real highest() { return sepprob::pow10f(100000, sepprob::PrecisionScope::current_digits()); }
  static Real lowest() { return -highest(); }
  static int digits10() { return sepprob::PrecisionScope::current_digits(); }
};

}  // namespace Eigen

#endif  // SEPPROB_NUMERIC_BIGFLOAT_EIGEN_HPP
