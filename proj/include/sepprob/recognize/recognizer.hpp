#ifndef SEPPROB_RECOGNIZE_RECOGNIZER_HPP
#define SEPPROB_RECOGNIZE_RECOGNIZER_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "sepprob/numeric/bigfloat.hpp"
#include "sepprob/numeric/constants.hpp"
#include "sepprob/numeric/rational.hpp"

namespace sepprob {

enum class CandidateForm { Rational, Affine };

/// A closed form proposed for a decimal: p/q, or a + b*C for a named constant C.
struct RecognitionCandidate {
  CandidateForm form = CandidateForm::Rational;
  BigRational value;     // p/q (Rational form)
  BigRational a, b;      // Affine form
  std::string constant;  // Affine form
  BigFloat residual;     // |input - candidate|
  double confidence = 0; // matched digits / digits needed to write the candidate
  bool exact_match = false;

  std::string describe() const;
};

/// Digits needed to write p/q: max(digits(p), digits(q)).
int specification_length(const BigRational& q);

/// First continued-fraction convergent p/q of x with q <= max_den that passes
/// the confidence rule, where n is the number of decimals written in x:
///   n >= 2 digits(q) + 6, specification_length <= n / 2, |x - p/q| < 10^-(n-2);
/// or x itself when x terminates and digits(p) + digits(q) fit in its
/// significant digits.
std::optional<RecognitionCandidate> to_rational(std::string_view x, const BigInt& max_den);

/// Tries each a in turn: rationalizes (x - a) / C and keeps the first (a, b)
/// that verifies at the full precision of x. x needs >= 30 significant digits.
std::optional<RecognitionCandidate> recognize_affine(std::string_view x, std::string_view constant,
                                                     std::span<const BigRational> a_candidates, const BigInt& max_den,
                                                     const ConstantTable& table = ConstantTable::builtin());

struct Verification {
  bool ok = false;
  BigFloat residual;
};

/// Recomputes the candidate to `digits` decimals and accepts when
/// |x - candidate| < 10^-(digits-2) and is below one unit in the last written
/// place of x.
Verification verify(const RecognitionCandidate& candidate, std::string_view x, int digits,
                    const ConstantTable& table = ConstantTable::builtin());

}  // namespace sepprob

#endif  // SEPPROB_RECOGNIZE_RECOGNIZER_HPP
