#include "sepprob/hyper/family.hpp"

#include "sepprob/errors.hpp"

namespace sepprob {

const std::array<BigRational, 6>& FamilyMember::upper_shifts() {
  static const std::array<BigRational, 6> v{BigRational(2, 5), BigRational(3, 5), BigRational(4, 5),
                                            BigRational(5, 6), BigRational(7, 6), BigRational(6, 5)};
  return v;
}

const std::array<BigRational, 6>& FamilyMember::lower_shifts() {
  static const std::array<BigRational, 6> v{BigRational(13, 10), BigRational(3, 2),  BigRational(17, 10),
                                            BigRational(19, 10), BigRational(2),     BigRational(21, 10)};
  return v;
}

BigRational FamilyMember::argument() { return BigRational(27, 64); }

HypergeometricSpec FamilyMember::spec() const {
  if (k < 1 || k > kCount) throw InputError("family member k must be in 1..6, got " + std::to_string(k));
  HypergeometricSpec s;
  s.upper.emplace_back(k);
  for (const auto& u : upper_shifts()) s.upper.push_back(alpha + u);
  for (const auto& l : lower_shifts()) s.lower.push_back(alpha + l);
  s.z = argument();
  return s;
}

CertifiedValue family_member_eval(const BigRational& alpha, int k, int digits) {
  FamilyMember m{k, alpha};
  HypergeometricSpec s = m.spec();
  try {
    return pfq_eval(s, digits);
  } catch (const ParameterPole& e) {
    // pfq_eval names the parameter "lower[j]"; report it as "alpha+shift"
    const size_t j = std::stoul(e.parameter().substr(6)) - 1;
    const std::string label = "alpha+" + to_string(FamilyMember::lower_shifts().at(j));
    throw ParameterPole("family member k=" + std::to_string(k) + " at alpha=" + to_string(alpha) + ": lower parameter " +
                            label + " = " + to_string(s.lower[j]) + " is a nonpositive integer",
                        label);
  }
}

}  // namespace sepprob
