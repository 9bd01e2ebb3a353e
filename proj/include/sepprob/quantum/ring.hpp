#ifndef SEPPROB_QUANTUM_RING_HPP
#define SEPPROB_QUANTUM_RING_HPP

#include <complex>
#include <string>
#include <string_view>

#include "sepprob/numeric/rational.hpp"
#include "sepprob/quantum/quaternion.hpp"

namespace sepprob {

/// Entry ring of the density matrices. Fixed Dyson-like labels:
/// Real <-> 1/2 (two rebits), Complex <-> 1 (two qubits), Quaternion <-> 2.
enum class Ring { Real, Complex, Quaternion };

BigRational alpha_of(Ring ring);
/// "rebit", "qubit", "quabit".
std::string ensemble_name(Ring ring);
Ring parse_ensemble(std::string_view name);

template <typename Scalar>
struct RingTraits;

template <>
struct RingTraits<double> {
  static constexpr Ring ring = Ring::Real;
  static constexpr int components = 1;
};

template <>
struct RingTraits<std::complex<double>> {
  static constexpr Ring ring = Ring::Complex;
  static constexpr int components = 2;
};

template <>
struct RingTraits<Quaternion> {
  static constexpr Ring ring = Ring::Quaternion;
  static constexpr int components = 4;
};

}  // namespace sepprob

#endif  // SEPPROB_QUANTUM_RING_HPP
