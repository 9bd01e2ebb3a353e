#ifndef SEPPROB_QUANTUM_SAMPLER_HPP
#define SEPPROB_QUANTUM_SAMPLER_HPP

#include <cstdint>
#include <vector>

#include "sepprob/quantum/counter_stream.hpp"
#include "sepprob/quantum/density.hpp"

namespace sepprob {

/// Hilbert-Schmidt draw for sample index `index`. Degenerate draws move to the
/// next attempt of the same index; `resampled` counts them.
template <typename Scalar>
Matrix4<Scalar> sample_density(std::uint64_t seed, std::uint64_t index, std::uint64_t* resampled = nullptr) {
  Matrix4<Scalar> rho;
  for (std::uint64_t attempt = 0;; ++attempt) {
    CounterStream stream(seed, index, attempt);
    if (try_sample_density<Scalar>(stream, rho)) return rho;
    if (resampled) ++*resampled;
  }
}

struct McResult {
  double estimate = 0;
  double std_error = 0;  // sqrt(estimate (1 - estimate) / samples)
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  Ring ensemble = Ring::Real;
  std::uint64_t separable = 0;
  std::uint64_t resampled = 0;
};

/// Fraction of draws with det(rho^PT) >= 0. The result depends only on
/// (ring, samples, seed); `threads` only partitions the index range.
McResult mc_separability(Ring ring, std::uint64_t samples, std::uint64_t seed, unsigned threads = 1);

struct MomentEntry {
  double mean = 0;
  double std_error = 0;
};

/// Sample means of det(rho^PT)^n det(rho)^k for 0 <= n <= max_n, 0 <= k <= max_k.
struct BivariateMomentTable {
  Ring ensemble = Ring::Real;
  int max_n = 0;
  int max_k = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<MomentEntry> entries;  // row-major in (n, k)
  double min_pt_det = 0, max_pt_det = 0;
  double min_det = 0, max_det = 0;
  std::uint64_t resampled = 0;

  const MomentEntry& at(int n, int k) const { return entries.at(static_cast<size_t>(n * (max_k + 1) + k)); }
};

BivariateMomentTable empirical_moments(Ring ring, std::uint64_t samples, int max_n, int max_k,
                                       std::uint64_t seed, unsigned threads = 1);

}  // namespace sepprob

#endif  // SEPPROB_QUANTUM_SAMPLER_HPP
