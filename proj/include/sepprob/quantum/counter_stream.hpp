#ifndef SEPPROB_QUANTUM_COUNTER_STREAM_HPP
#define SEPPROB_QUANTUM_COUNTER_STREAM_HPP

#include <cstdint>
#include <limits>

namespace sepprob {

/// Counter-based uniform bit generator. Output j of stream (seed, index, attempt)
/// is a pure function of those four numbers, so sample i draws the same
/// deviates no matter which thread evaluates it.
class CounterStream {
 public:
  using result_type = std::uint64_t;

  CounterStream(std::uint64_t seed, std::uint64_t index, std::uint64_t attempt = 0)
      : key_(mix(mix(seed ^ 0x243f6a8885a308d3ULL) ^ (index * 0x9e3779b97f4a7c15ULL) ^
                 mix(attempt + 0x13198a2e03707344ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

 private:
  // SplitMix64 finalizer
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace sepprob

#endif  // SEPPROB_QUANTUM_COUNTER_STREAM_HPP
