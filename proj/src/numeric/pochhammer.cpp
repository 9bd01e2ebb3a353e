#include "sepprob/numeric/pochhammer.hpp"

namespace sepprob {

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace sepprob
