#ifndef SEPPROB_HYPER_FORMULA_HPP
#define SEPPROB_HYPER_FORMULA_HPP

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sepprob/hyper/family.hpp"

namespace sepprob {

/// num(alpha) / den(alpha), coefficients in ascending powers.
struct RationalFunction {
  std::vector<BigRational> num{BigRational(0)};
  std::vector<BigRational> den{BigRational(1)};

  static RationalFunction constant(const BigRational& c) { return {{c}, {BigRational(1)}}; }

  bool is_zero() const;
  /// Throws ParameterPole(label) when the denominator vanishes at alpha.
  BigRational evaluate(const BigRational& alpha, const std::string& label = "denominator") const;
};

BigRational evaluate_polynomial(const std::vector<BigRational>& coeffs, const BigRational& x);

/// P(alpha) = affine(alpha) + sum_k weights[k-1](alpha) * F_k(alpha).
struct FormulaConfig {
  RationalFunction affine;
  std::array<RationalFunction, FamilyMember::kCount> weights;
  std::string description;

  void validate() const;
};

FormulaConfig parse_formula_config(std::string_view text);
FormulaConfig load_formula_config(const std::filesystem::path& path);
std::string to_json(const FormulaConfig& config);

/// The formula at alpha with radius <= 10^-digits. Members with a zero weight
/// at alpha are not evaluated; if all are zero the value is exact.
CertifiedValue assemble_P(const FormulaConfig& config, const BigRational& alpha, int digits);

struct FitSample {
  BigRational alpha;
  BigRational value;
};

/// Unknowns: degree-D polynomial numerators of the affine term and the six
/// weights, 7 (D + 1) coefficients, over a fixed common denominator.
struct FitProblem {
  std::vector<FitSample> samples;
  int ansatz_degree = 2;
  std::vector<FitSample> holdout;
  std::vector<BigRational> denominator{BigRational(1)};
  BigInt max_den = BigInt(1000000000000L);  // for rationalizing coefficients
};

struct PointResidual {
  BigRational alpha;
  BigFloat residual;
};

struct FitReport {
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  int working_digits = 0;
  BigFloat condition_estimate;
  bool rationalized = false;  // every coefficient recognized as a small rational
  BigFloat max_sample_residual;
  BigFloat max_holdout_residual;
  std::vector<PointResidual> sample_residuals;
  std::vector<PointResidual> holdout_residuals;
};

struct FitResult {
  FormulaConfig config;
  FitReport report;
};

/// Least-squares fit in high precision (column-pivoted QR). Throws
/// SingularSystem when there are fewer equations than unknowns or the matrix
/// is numerically rank deficient; large residuals are reported, not raised.
FitResult fit_formula(const FitProblem& problem, int digits);

}  // namespace sepprob

#endif  // SEPPROB_HYPER_FORMULA_HPP
