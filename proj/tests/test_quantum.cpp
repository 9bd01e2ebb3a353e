#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "sepprob/errors.hpp"
#include "sepprob/quantum/density.hpp"
#include "sepprob/quantum/sampler.hpp"

using namespace sepprob;
using cd = std::complex<double>;

namespace {

// Naive Gaussian elimination with partial pivoting; used as a determinant
// oracle independent of Eigen's LU.
template <typename T>
T naive_determinant(std::vector<std::vector<T>> a) {
  const size_t n = a.size();
  T det = T(1);
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    for (size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    if (std::abs(a[piv][c]) == 0) return T(0);
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      T f = a[r][c] / a[c][c];
      for (size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

// Independent complex Hilbert-Schmidt draw: square 4x4 complex Ginibre.
double oracle_complex_det(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  cd g[4][4];
  for (auto& row : g)
    for (auto& e : row) e = cd(n(rng), n(rng));
  std::vector<std::vector<cd>> w(4, std::vector<cd>(4));
  double tr = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cd s = 0;
      for (int k = 0; k < 4; ++k) s += g[i][k] * std::conj(g[j][k]);
      w[i][j] = s;
    }
  for (int i = 0; i < 4; ++i) tr += w[i][i].real();
  for (auto& row : w)
    for (auto& e : row) e /= tr;
  return naive_determinant(w).real();
}

// Independent real Hilbert-Schmidt draw: 4x5 real Ginibre.
double oracle_real_det(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  double g[4][5];
  for (auto& row : g)
    for (auto& e : row) e = n(rng);
  std::vector<std::vector<double>> w(4, std::vector<double>(4));
  double tr = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0;
      for (int k = 0; k < 5; ++k) s += g[i][k] * g[j][k];
      w[i][j] = s;
    }
  for (int i = 0; i < 4; ++i) tr += w[i][i];
  for (auto& row : w)
    for (auto& e : row) e /= tr;
  return naive_determinant(w);
}

struct MeanStat {
  double mean, se;
};

template <typename F>
MeanStat mean_of(int n, F&& draw) {
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    double v = draw(i);
    s += v;
    s2 += v * v;
  }
  double m = s / n;
  return {m, std::sqrt((s2 / n - m * m) / n)};
}

Matrix4<Quaternion> random_quaternion_hermitian(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  Matrix4<Quaternion> m;
  for (int i = 0; i < 4; ++i) {
    m(i, i) = Quaternion(u(rng));
    for (int j = i + 1; j < 4; ++j) {
      m(i, j) = Quaternion(u(rng), u(rng), u(rng), u(rng));
      m(j, i) = conj(m(i, j));
    }
  }
  return m;
}

template <typename Scalar>
Matrix4<Scalar> diag4(double a, double b, double c, double d) {
  Matrix4<Scalar> m = Matrix4<Scalar>::Constant(Scalar(0));
  m(0, 0) = Scalar(a);
  m(1, 1) = Scalar(b);
  m(2, 2) = Scalar(c);
  m(3, 3) = Scalar(d);
  return m;
}

template <typename Scalar>
void check_sampled_invariants(std::uint64_t seed) {
  for (std::uint64_t i = 0; i < 2000; ++i) {
    Matrix4<Scalar> rho = sample_density<Scalar>(seed, i);
    REQUIRE(is_hermitian(rho));
    REQUIRE(std::abs(trace_real(rho) - 1.0) <= 1e-12);
    REQUIRE(min_eigenvalue(rho) >= -1e-12);
    Matrix4<Scalar> pt = partial_transpose(rho);
    REQUIRE(partial_transpose(pt) == rho);
    REQUIRE(is_hermitian(pt));
    REQUIRE(trace_real(pt) == trace_real(rho));
    double d = ring_determinant(rho), dpt = ring_determinant(pt);
    REQUIRE(d >= -1e-12);
    REQUIRE(d <= 1.0 / 256 + 1e-12);
    REQUIRE(dpt >= -1.0 / 16 - 1e-12);
    REQUIRE(dpt <= 1.0 / 256 + 1e-12);
  }
}

}  // namespace

TEST_CASE("partial transpose fixed points and the Bell state") {
  auto id = diag4<cd>(0.25, 0.25, 0.25, 0.25);
  CHECK(partial_transpose(id) == id);
  Matrix4<double> bell = Matrix4<double>::Zero();
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
  CHECK(determinant(bell) == doctest::Approx(0.0));
  CHECK(determinant(partial_transpose(bell)) == doctest::Approx(-1.0 / 16).epsilon(1e-14));
  Matrix4<cd> bad = Matrix4<cd>::Zero();
  bad(0, 1) = cd(0.3, 0.1);
  CHECK_THROWS_AS(partial_transpose(bad), InputError);
}

TEST_CASE("determinant examples") {
  CHECK(determinant(diag4<double>(0.25, 0.25, 0.25, 0.25)) == doctest::Approx(1.0 / 256).epsilon(1e-15));
  CHECK(determinant(diag4<cd>(0.5, 0.25, 0.125, 0.125)) == doctest::Approx(1.0 / 512).epsilon(1e-15));
  // |01><01|, a rank-one product state
  CHECK(std::abs(determinant(diag4<cd>(0, 1, 0, 0))) <= 1e-12);
  // a non-Hermitian complex matrix with complex determinant is refused
  Matrix4<cd> m = diag4<cd>(1, 1, 1, 1);
  m(0, 0) = cd(0, 1);
  CHECK_THROWS_AS(determinant(m), NumericalError);
}

TEST_CASE("moore determinant examples") {
  CHECK(moore_determinant(diag4<Quaternion>(0.5, 0.25, 0.125, 0.125)) == doctest::Approx(1.0 / 512).epsilon(1e-12));
  CHECK(moore_determinant(diag4<Quaternion>(0.25, 0.25, 0.25, 0.25)) == doctest::Approx(1.0 / 256).epsilon(1e-12));
  // diag(i, 1, 1, 1): characteristic polynomial of the embedding has the
  // non-square factor lambda^2 + 1
  Matrix4<Quaternion> m = diag4<Quaternion>(1, 1, 1, 1);
  m(0, 0) = Quaternion(0, 1, 0, 0);
  CHECK_THROWS_AS(moore_determinant(m), NumericalError);
}

TEST_CASE("moore determinant squared matches a brute-force 8x8 determinant") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 10000; ++trial) {
    Matrix4<Quaternion> m = random_quaternion_hermitian(rng);
    Matrix8cd e = complex_embedding(m);
    std::vector<std::vector<cd>> rows(8, std::vector<cd>(8));
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) rows[i][j] = e(i, j);
    double brute = naive_determinant(rows).real();
    double moore = moore_determinant(m);
    REQUIRE(std::abs(moore * moore - brute) <= 1e-8 * std::max(1.0, std::abs(brute)));
  }
}

TEST_CASE("moore determinant of an all-real quaternionic matrix is the real determinant") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 2000; ++trial) {
    Matrix4<double> r;
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) r(i, j) = r(j, i) = u(rng);
    Matrix4<Quaternion> q;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) q(i, j) = Quaternion(r(i, j));
    REQUIRE(std::abs(moore_determinant(q) - determinant(r)) <= 1e-10);
  }
}

TEST_CASE("quaternionic samples have doubled embedding eigenvalues") {
  for (std::uint64_t i = 0; i < 500; ++i) {
    Matrix4<Quaternion> rho = sample_density<Quaternion>(5, i);
    Eigen::SelfAdjointEigenSolver<Matrix8cd> es(complex_embedding(rho));
    auto ev = es.eigenvalues();
    for (int k = 0; k < 8; k += 2) REQUIRE(std::abs(ev(k) - ev(k + 1)) <= 1e-9);
  }
}

TEST_CASE("sampled matrices satisfy trace, positivity, involution and support bounds") {
  check_sampled_invariants<double>(1);
  check_sampled_invariants<cd>(2);
  check_sampled_invariants<Quaternion>(3);
}

TEST_CASE("complex sampler agrees with an independent square-Ginibre sampler") {
  const int n = 100000;
  MeanStat ours = mean_of(n, [](int i) { return determinant(sample_density<cd>(17, i)); });
  std::mt19937_64 rng(4242);
  MeanStat theirs = mean_of(n, [&](int) { return oracle_complex_det(rng); });
  double combined = std::hypot(ours.se, theirs.se);
  CAPTURE(ours.mean);
  CAPTURE(theirs.mean);
  CHECK(std::abs(ours.mean - theirs.mean) <= 5 * combined);
}

TEST_CASE("real sampler agrees with an independent 4x5 Ginibre sampler") {
  const int n = 100000;
  MeanStat ours = mean_of(n, [](int i) { return determinant(sample_density<double>(23, i)); });
  std::mt19937_64 rng(777);
  MeanStat theirs = mean_of(n, [&](int) { return oracle_real_det(rng); });
  CAPTURE(ours.mean);
  CAPTURE(theirs.mean);
  CHECK(std::abs(ours.mean - theirs.mean) <= 5 * std::hypot(ours.se, theirs.se));
}

TEST_CASE("mc_separability is deterministic and thread-count independent") {
  McResult a = mc_separability(Ring::Complex, 20000, 123, 1);
  McResult b = mc_separability(Ring::Complex, 20000, 123, 1);
  McResult c = mc_separability(Ring::Complex, 20000, 123, 3);
  CHECK(a.separable == b.separable);
  CHECK(a.estimate == b.estimate);
  CHECK(a.std_error == b.std_error);
  CHECK(a.separable == c.separable);
  CHECK(a.samples == 20000);
  CHECK(a.std_error == doctest::Approx(std::sqrt(a.estimate * (1 - a.estimate) / 20000)).epsilon(1e-15));
  CHECK_THROWS_AS(mc_separability(Ring::Real, 0, 1, 1), InputError);
  CHECK_THROWS_AS(mc_separability(Ring::Real, 10, 1, 0), InputError);
}

TEST_CASE("separability probability decreases with alpha") {
  McResult r = mc_separability(Ring::Real, 200000, 8, 1);
  McResult c = mc_separability(Ring::Complex, 200000, 8, 1);
  McResult q = mc_separability(Ring::Quaternion, 100000, 8, 1);
  CHECK(r.estimate > c.estimate);
  CHECK(c.estimate > q.estimate);
}

TEST_CASE("empirical moments") {
  BivariateMomentTable t0 = empirical_moments(Ring::Quaternion, 50, 0, 0, 1, 1);
  CHECK(t0.at(0, 0).mean == 1.0);
  CHECK(t0.at(0, 0).std_error == 0.0);

  BivariateMomentTable a = empirical_moments(Ring::Real, 1000000, 1, 0, 1001, 1);
  BivariateMomentTable b = empirical_moments(Ring::Real, 1000000, 1, 0, 2002, 1);
  double diff = std::abs(a.at(1, 0).mean - b.at(1, 0).mean);
  CHECK(diff <= 5 * std::hypot(a.at(1, 0).std_error, b.at(1, 0).std_error));

  BivariateMomentTable c = empirical_moments(Ring::Complex, 1000000, 2, 1, 5, 1);
  for (int n = 0; n <= 2; ++n)
    for (int k = 0; k <= 1; ++k) {
      CHECK(std::isfinite(c.at(n, k).mean));
      CHECK(std::isfinite(c.at(n, k).std_error));
    }
  CHECK(c.min_pt_det >= -1.0 / 16 - 1e-12);
  CHECK(c.max_pt_det <= 1.0 / 256 + 1e-12);
  CHECK(c.min_det >= -1e-12);

  BivariateMomentTable c3 = empirical_moments(Ring::Complex, 40000, 2, 1, 5, 3);
  BivariateMomentTable c1 = empirical_moments(Ring::Complex, 40000, 2, 1, 5, 1);
  for (size_t i = 0; i < c1.entries.size(); ++i) CHECK(c1.entries[i].mean == c3.entries[i].mean);
}
