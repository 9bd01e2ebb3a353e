#ifndef SEPPROB_MOMENTS_LEGENDRE_HPP
#define SEPPROB_MOMENTS_LEGENDRE_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <vector>

#include "sepprob/errors.hpp"
#include "sepprob/numeric/rational.hpp"

namespace sepprob {

/// Coefficient multiply-adds performed by the Legendre recurrences.
struct OpCount {
  std::uint64_t multiply_adds = 0;
};

/// P_0(t) .. P_degree(t) by (k+1) P_{k+1} = (2k+1) t P_k - k P_{k-1}.
template <typename Scalar>
std::vector<Scalar> legendre_values(const Scalar& t, int degree) {
  std::vector<Scalar> p;
  p.reserve(static_cast<size_t>(degree) + 1);
  p.emplace_back(1);
  if (degree >= 1) p.push_back(t);
  for (int k = 1; k < degree; ++k)
    p.push_back((Scalar(2 * k + 1) * t * p[k] - Scalar(k) * p[k - 1]) / Scalar(k + 1));
  return p;
}

/// m_k = <P_k(u)> for k = 0..degree, given mu_j = <u^j>. The monomial
/// coefficient vectors of P_k are carried forward by the three-term recurrence
/// and dotted against mu; O(degree^2) coefficient operations.
template <typename Scalar>
std::vector<Scalar> legendre_moments(std::span<const Scalar> mu, int degree, OpCount* ops = nullptr) {
  if (degree < 0) throw InputError("legendre_moments: degree must be >= 0");
  if (static_cast<size_t>(degree) >= mu.size())
    throw InsufficientMoments("legendre_moments: degree " + std::to_string(degree) + " needs " +
                              std::to_string(degree + 1) + " moments, have " + std::to_string(mu.size()));
  const size_t width = static_cast<size_t>(degree) + 2;
  std::vector<Scalar> prev(width, Scalar(0)), cur(width, Scalar(0)), next(width, Scalar(0));
  std::vector<Scalar> m;
  m.reserve(width - 1);
  cur[0] = Scalar(1);  // P_0
  std::uint64_t count = 0;
  for (int k = 0; k <= degree; ++k) {
    Scalar acc(0);
    for (int j = k % 2; j <= k; j += 2) {
      acc += cur[j] * mu[j];
      ++count;
    }
    m.push_back(acc);
    if (k == degree) break;
    const Scalar up = Scalar(2 * k + 1) / Scalar(k + 1);
    const Scalar down = Scalar(k) / Scalar(k + 1);
    // P_{k+1} has the parity of k+1
    for (int j = (k + 1) % 2; j <= k + 1; j += 2) {
      Scalar v(0);
      if (j >= 1) v = up * cur[j - 1];
      if (j <= k - 1) v -= down * prev[j];
      next[j] = v;
      ++count;
    }
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  if (ops) ops->multiply_adds += count;
  return m;
}

/// Integer-scaled Legendre coefficients: row k holds A_k = 2^k P_k, which has
/// integer coefficients; only entries with j = k (mod 2) are stored.
class LegendreTable {
 public:
  explicit LegendreTable(int degree);

  int degree() const { return degree_; }
  /// Coefficients of 2^k P_k at t^j for j = k%2, k%2+2, ..., k.
  std::span<const BigInt> row(int k) const;
  /// Exact monomial coefficients of P_k, index j = power.
  std::vector<BigRational> coefficients(int k) const;

  /// Binary file: "SPLT", version, degree, then each stored coefficient.
  void save(const std::filesystem::path& path) const;
  static LegendreTable load(const std::filesystem::path& path);

 private:
  LegendreTable() = default;
  void check_rows() const;

  int degree_ = 0;
  std::vector<size_t> offsets_;
  std::vector<BigInt> data_;
};

/// Advances (A_{k-1}, A_k) -> A_{k+1} with (k+1) A_{k+1} = 2(2k+1) t A_k - 4k A_{k-1},
/// using dense coefficient vectors indexed by power.
void advance_scaled_legendre(int k, const std::vector<BigInt>& prev, const std::vector<BigInt>& cur,
                             std::vector<BigInt>& next, OpCount* ops = nullptr);

/// Exact Legendre moments through the integer-scaled recurrence. Uses `table`
/// when it covers `degree`, otherwise streams the recurrence.
std::vector<BigRational> legendre_moments_exact(std::span<const BigRational> mu, int degree,
                                                const LegendreTable* table = nullptr, OpCount* ops = nullptr);

/// Per-process table cache, optionally persisted under a directory as
/// legendre-<degree>.bin. Concurrent readers; a writer replaces files atomically.
class LegendreCache {
 public:
  /// Tables above this degree are never materialized (memory grows as degree^3 bits).
  static constexpr int kMaxTableDegree = 1024;

  explicit LegendreCache(std::optional<std::filesystem::path> directory = std::nullopt);

  /// A table of degree >= `degree`, or nullptr when degree > kMaxTableDegree.
  std::shared_ptr<const LegendreTable> get(int degree);

  const std::optional<std::filesystem::path>& directory() const { return directory_; }

 private:
  std::optional<std::filesystem::path> directory_;
  std::shared_mutex mutex_;
  std::map<int, std::shared_ptr<const LegendreTable>> tables_;
};

}  // namespace sepprob

#endif  // SEPPROB_MOMENTS_LEGENDRE_HPP
