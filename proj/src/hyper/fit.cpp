#include <Eigen/QR>
#include <algorithm>
#include <map>

#include "sepprob/errors.hpp"
#include "sepprob/hyper/formula.hpp"
#include "sepprob/numeric/bigfloat_eigen.hpp"
#include "sepprob/numeric/decimal.hpp"
#include "sepprob/recognize/recognizer.hpp"

namespace sepprob {

namespace {

using Matrix = Eigen::Matrix<BigFloat, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<BigFloat, Eigen::Dynamic, 1>;
using MemberValues = std::array<BigFloat, FamilyMember::kCount>;

class MemberCache {
 public:
  explicit MemberCache(int digits) : digits_(digits) {}

  const MemberValues& at(const BigRational& alpha) {
    auto it = values_.find(alpha);
    if (it != values_.end()) return it->second;
    MemberValues v;
    for (int k = 0; k < FamilyMember::kCount; ++k) v[k] = family_member_eval(alpha, k + 1, digits_).value.midpoint;
    return values_.emplace(alpha, std::move(v)).first->second;
  }

 private:
  int digits_;
  std::map<BigRational, MemberValues> values_;
};

/// P(alpha) from cached member values at `work` digits.
BigFloat evaluate_with(const FormulaConfig& cfg, const BigRational& alpha, const MemberValues& f, int work) {
  BigFloat acc(cfg.affine.evaluate(alpha, "affine"), work);
  for (int k = 0; k < FamilyMember::kCount; ++k) {
    BigRational c = cfg.weights[k].evaluate(alpha, "weights[" + std::to_string(k) + "]");
    if (c != 0) acc += BigFloat(c, work) * f[k];
  }
  return acc;
}

FormulaConfig config_from(const std::vector<BigRational>& coeffs, int degree, const std::vector<BigRational>& den) {
  FormulaConfig cfg;
  auto slice = [&](int block) {
    RationalFunction f;
    f.num.assign(coeffs.begin() + block * (degree + 1), coeffs.begin() + (block + 1) * (degree + 1));
    f.den = den;
    return f;
  };
  cfg.affine = slice(0);
  for (int k = 0; k < FamilyMember::kCount; ++k) cfg.weights[k] = slice(k + 1);
  return cfg;
}

BigFloat max_of(const std::vector<PointResidual>& rs) {
  BigFloat m(0);
  for (const auto& r : rs) m = std::max(m, r.residual);
  return m;
}

}  // namespace

FitResult fit_formula(const FitProblem& problem, int digits) {
  if (digits < 10) throw InputError("fit_formula: digits must be >= 10");
  if (problem.ansatz_degree < 0) throw InputError("fit_formula: ansatz degree must be >= 0");
  const int D = problem.ansatz_degree;
  const size_t unknowns = static_cast<size_t>(7 * (D + 1));
  const size_t equations = problem.samples.size();
  {
    std::vector<BigRational> alphas;
    for (const auto& s : problem.samples) alphas.push_back(s.alpha);
    std::sort(alphas.begin(), alphas.end());
    if (std::adjacent_find(alphas.begin(), alphas.end()) != alphas.end())
      throw InputError("fit_formula: sample alphas must be distinct");
  }
  if (equations < unknowns)
    throw SingularSystem("fit_formula: " + std::to_string(equations) + " samples for " + std::to_string(unknowns) +
                             " unknowns (underdetermined)",
                         std::numeric_limits<double>::infinity());

  const int work = digits + 20;
  PrecisionScope scope(work);
  MemberCache members(work);

  // columns: alpha^j, alpha^j F_1, ..., alpha^j F_6, scaled to unit max norm
  Matrix A(static_cast<Eigen::Index>(equations), static_cast<Eigen::Index>(unknowns));
  Vector rhs(static_cast<Eigen::Index>(equations));
  for (size_t i = 0; i < equations; ++i) {
    const FitSample& s = problem.samples[i];
    const MemberValues& f = members.at(s.alpha);
    const BigRational q = evaluate_polynomial(problem.denominator, s.alpha);
    if (q == 0) throw ParameterPole("fit_formula: denominator vanishes at alpha=" + to_string(s.alpha), "denominator");
    rhs(static_cast<Eigen::Index>(i)) = BigFloat(s.value * q, work);
    for (int block = 0; block < 7; ++block) {
      BigRational power = 1;
      for (int j = 0; j <= D; ++j, power *= s.alpha) {
        BigFloat entry(power, work);
        if (block > 0) entry *= f[block - 1];
        A(static_cast<Eigen::Index>(i), block * (D + 1) + j) = entry;
      }
    }
  }
  std::vector<BigFloat> scale(unknowns, BigFloat(0));
  for (Eigen::Index c = 0; c < A.cols(); ++c) {
    BigFloat m(0);
    for (Eigen::Index r = 0; r < A.rows(); ++r) m = std::max(m, abs(A(r, c)));
    if (m.is_zero()) m = BigFloat(1);
    scale[c] = m;
    for (Eigen::Index r = 0; r < A.rows(); ++r) A(r, c) /= m;
  }

  Eigen::ColPivHouseholderQR<Matrix> qr(A);
  const auto& R = qr.matrixR();
  const Eigen::Index n = A.cols();
  BigFloat largest = abs(R(0, 0)), smallest = abs(R(n - 1, n - 1));
  BigFloat condition = smallest.is_zero() ? pow10f(100000, 20) : largest / smallest;
  // rank deficient when the smallest pivot is lost in the working precision
  if (smallest.is_zero() || condition > pow10f(work - 10, 20))
    throw SingularSystem("fit_formula: matrix is numerically rank deficient (condition estimate " +
                             condition.to_string(6) + ")",
                         condition.to_double());
  Vector x = qr.solve(rhs);

  // coefficients known to about work - log10(condition) digits
  const int trusted = std::max(10, work - static_cast<int>(std::ceil(std::log10(std::max(1.0, condition.to_double())))) - 5);
  std::vector<BigRational> raw(unknowns), rational(unknowns);
  bool all_rational = true;
  for (size_t c = 0; c < unknowns; ++c) {
    BigFloat v = x(static_cast<Eigen::Index>(c)) / scale[c];
    const BigRational vq = v.to_rational();
    const long mag = vq == 0 ? 0 : floor_log10(abs(vq));
    const int places = std::max(1, trusted - static_cast<int>(std::max<long>(mag + 1, 0)));
    std::string text = fixed_render(vq, places);
    raw[c] = parse_decimal(text).value;
    std::optional<RecognitionCandidate> r = to_rational(text, problem.max_den);
    if (r) {
      rational[c] = r->value;
    } else if (abs(vq) < pow10q(-(places - 2))) {
      rational[c] = 0;
    } else {
      all_rational = false;
    }
  }

  const BigRational tolerance = pow10q(-(digits - 10));
  auto residuals = [&](const FormulaConfig& cfg, const std::vector<FitSample>& pts) {
    std::vector<PointResidual> out;
    for (const auto& s : pts) {
      BigFloat v = evaluate_with(cfg, s.alpha, members.at(s.alpha), work);
      out.push_back({s.alpha, abs(v - BigFloat(s.value, work))});
    }
    return out;
  };

  FitResult result;
  result.config = config_from(raw, D, problem.denominator);
  result.report.rationalized = false;
  if (all_rational) {
    FormulaConfig candidate = config_from(rational, D, problem.denominator);
    auto rs = residuals(candidate, problem.samples);
    if (max_of(rs).to_rational() <= tolerance) {
      result.config = candidate;
      result.report.rationalized = true;
    }
  }
  result.config.description = "fit: degree " + std::to_string(D) + " numerators, " + std::to_string(equations) +
                              " samples" + (result.report.rationalized ? ", rational coefficients" : "");

  FitReport& rep = result.report;
  rep.unknowns = unknowns;
  rep.equations = equations;
  rep.working_digits = work;
  rep.condition_estimate = condition;
  rep.sample_residuals = residuals(result.config, problem.samples);
  rep.holdout_residuals = residuals(result.config, problem.holdout);
  rep.max_sample_residual = max_of(rep.sample_residuals);
  rep.max_holdout_residual = max_of(rep.holdout_residuals);
  return result;
}

}  // namespace sepprob
