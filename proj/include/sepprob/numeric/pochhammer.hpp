#ifndef SEPPROB_NUMERIC_POCHHAMMER_HPP
#define SEPPROB_NUMERIC_POCHHAMMER_HPP

#include "sepprob/numeric/rational.hpp"

namespace sepprob {

/// Rising factorial (a)_n = a (a+1) ... (a+n-1); (a)_0 = 1.
template <typename Scalar>
Scalar pochhammer(const Scalar& a, unsigned n) {
  Scalar result(1);
  Scalar factor(a);
  for (unsigned i = 0; i < n; ++i) {
    result *= factor;
    factor += 1;
  }
  return result;
}

/// Binomial coefficient C(n, k) as an exact integer.
BigInt binomial(unsigned long n, unsigned long k);

}  // namespace sepprob

#endif  // SEPPROB_NUMERIC_POCHHAMMER_HPP
