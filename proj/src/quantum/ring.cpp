#include "sepprob/quantum/ring.hpp"

#include "sepprob/errors.hpp"

namespace sepprob {

BigRational alpha_of(Ring ring) {
  switch (ring) {
    case Ring::Real: return BigRational(1, 2);
    case Ring::Complex: return BigRational(1);
    case Ring::Quaternion: return BigRational(2);
  }
  throw InputError("unknown ring");
}

std::string ensemble_name(Ring ring) {
  switch (ring) {
    case Ring::Real: return "rebit";
    case Ring::Complex: return "qubit";
    case Ring::Quaternion: return "quabit";
  }
  throw InputError("unknown ring");
}

Ring parse_ensemble(std::string_view name) {
  if (name == "rebit") return Ring::Real;
  if (name == "qubit") return Ring::Complex;
  if (name == "quabit") return Ring::Quaternion;
  throw InputError("unknown ensemble '" + std::string(name) + "' (expected rebit, qubit or quabit)");
}

}  // namespace sepprob
