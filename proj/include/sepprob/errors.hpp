#ifndef SEPPROB_ERRORS_HPP
#define SEPPROB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sepprob {

/// Malformed or out-of-domain input. CLI exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation could not meet its numerical contract. CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A verification workflow ran to completion and the check failed. CLI exit code 4.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientMoments : public InputError {
 public:
  using InputError::InputError;
};

/// A lower hypergeometric parameter reached a nonpositive integer.
class ParameterPole : public InputError {
 public:
  ParameterPole(const std::string& what, std::string parameter)
      : InputError(what), parameter_(std::move(parameter)) {}
  const std::string& parameter() const noexcept { return parameter_; }

 private:
  std::string parameter_;
};

class SingularSystem : public NumericalError {
 public:
  SingularSystem(const std::string& what, double condition)
      : NumericalError(what), condition_(condition) {}
  double condition_estimate() const noexcept { return condition_; }

 private:
  double condition_;
};

}  // namespace sepprob

#endif  // SEPPROB_ERRORS_HPP
