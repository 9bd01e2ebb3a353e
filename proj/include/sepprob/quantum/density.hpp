#ifndef SEPPROB_QUANTUM_DENSITY_HPP
#define SEPPROB_QUANTUM_DENSITY_HPP

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "sepprob/errors.hpp"
#include "sepprob/quantum/ring.hpp"

namespace sepprob {

template <typename Scalar>
using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;

using Matrix8cd = Eigen::Matrix<std::complex<double>, 8, 8>;

inline double real_part(double v) { return v; }
inline double real_part(const std::complex<double>& v) { return v.real(); }
inline double real_part(const Quaternion& q) { return q.w; }

inline double magnitude2(double v) { return v * v; }
inline double magnitude2(const std::complex<double>& v) { return std::norm(v); }
inline double magnitude2(const Quaternion& q) { return q.norm2(); }

template <typename Scalar>
double max_abs_entry(const Matrix4<Scalar>& m) {
  double best = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) best = std::max(best, magnitude2(m(i, j)));
  return std::sqrt(best);
}

/// Largest |m(i,j) - conj(m(j,i))|.
template <typename Scalar>
double hermitian_defect(const Matrix4<Scalar>& m) {
  double worst = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) worst = std::max(worst, magnitude2(m(i, j) - conj(m(j, i))));
  return std::sqrt(worst);
}

template <typename Scalar>
bool is_hermitian(const Matrix4<Scalar>& m, double tolerance = 0.0) {
  return hermitian_defect(m) <= tolerance;
}

template <typename Scalar>
double trace_real(const Matrix4<Scalar>& m) {
  double t = 0;
  for (int i = 0; i < 4; ++i) t += real_part(m(i, i));
  return t;
}

/// G G^dagger, assembled from the upper triangle so the result is Hermitian to the bit.
template <typename Scalar>
Matrix4<Scalar> hermitian_gram(const Matrix4<Scalar>& g) {
  Matrix4<Scalar> out;
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      Scalar acc(0);
      for (int k = 0; k < 4; ++k) acc += g(i, k) * conj(g(j, k));
      if (i == j) acc = Scalar(real_part(acc));
      out(i, j) = acc;
      out(j, i) = conj(acc);
    }
  }
  return out;
}

/// Partial transpose on the first qubit of a 2x2 block matrix:
/// [[A, B], [B^dagger, D]] -> [[A, B^dagger], [B, D]]. A pure permutation of
/// entries, so trace, Hermiticity, and the involution hold exactly.
template <typename Scalar>
Matrix4<Scalar> partial_transpose(const Matrix4<Scalar>& m, double tolerance = 1e-12) {
  if (!is_hermitian(m, tolerance * std::max(1.0, max_abs_entry(m))))
    throw InputError("partial_transpose: input matrix is not Hermitian");
  Matrix4<Scalar> out = m;
  out.template block<2, 2>(0, 2) = m.template block<2, 2>(2, 0);
  out.template block<2, 2>(2, 0) = m.template block<2, 2>(0, 2);
  return out;
}

/// 8x8 complex image of a quaternionic matrix under q -> complex_block(q).
Matrix8cd complex_embedding(const Matrix4<Quaternion>& m);

/// Determinant of a real or complex Hermitian 4x4 matrix.
double determinant(const Matrix4<double>& m);
/// Throws NumericalError if the imaginary part exceeds 1e-10.
double determinant(const Matrix4<std::complex<double>>& m);

/// Coefficients c_0..c_8 of det(lambda I - M), c_8 = 1 (Faddeev-LeVerrier).
std::array<double, 9> characteristic_polynomial(const Matrix8cd& m);

/// Moore determinant of a quaternionic Hermitian matrix: the constant term of the
/// monic square root of the embedding's characteristic polynomial.
double moore_determinant(const Matrix4<Quaternion>& m);

/// determinant() for Real/Complex, moore_determinant() for Quaternion.
inline double ring_determinant(const Matrix4<double>& m) { return determinant(m); }
inline double ring_determinant(const Matrix4<std::complex<double>>& m) { return determinant(m); }
inline double ring_determinant(const Matrix4<Quaternion>& m) { return moore_determinant(m); }

/// Smallest eigenvalue of the real/complex matrix or of the complex embedding.
double min_eigenvalue(const Matrix4<double>& m);
double min_eigenvalue(const Matrix4<std::complex<double>>& m);
double min_eigenvalue(const Matrix4<Quaternion>& m);

template <typename Scalar, typename Stream>
Scalar normal_entry(Stream& stream) {
  std::normal_distribution<double> normal;
  if constexpr (RingTraits<Scalar>::components == 1) {
    return normal(stream);
  } else if constexpr (RingTraits<Scalar>::components == 2) {
    double re = normal(stream);
    double im = normal(stream);
    return {re, im};
  } else {
    double w = normal(stream);
    double x = normal(stream);
    double y = normal(stream);
    double z = normal(stream);
    return {w, x, y, z};
  }
}

/// Chi-squared degrees of freedom of the Bartlett diagonal T(i,i) that make
/// T T^dagger flat (exponent-zero Wishart) over a ring with `components` real
/// components per entry: components * (3 - i) + 2.
constexpr int bartlett_dof(int components, int i) { return components * (3 - i) + 2; }

/// One Hilbert-Schmidt draw rho = T T^dagger / tr(T T^dagger) with T lower
/// triangular (Bartlett factor): standard normal entries below the diagonal,
/// chi-distributed reals on it. Returns false on the probability-zero event tr = 0.
template <typename Scalar, typename Stream>
bool try_sample_density(Stream& stream, Matrix4<Scalar>& rho) {
  constexpr int components = RingTraits<Scalar>::components;
  std::normal_distribution<double> normal;
  Matrix4<Scalar> t = Matrix4<Scalar>::Constant(Scalar(0));
  for (int i = 0; i < 4; ++i) {
    double chi2 = 0;
    for (int d = 0; d < bartlett_dof(components, i); ++d) {
      double v = normal(stream);
      chi2 += v * v;
    }
    t(i, i) = Scalar(std::sqrt(chi2));
    for (int j = 0; j < i; ++j) t(i, j) = normal_entry<Scalar>(stream);
  }
  Matrix4<Scalar> w = hermitian_gram(t);
  double tr = trace_real(w);
  if (!(tr > 0)) return false;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) w(i, j) = w(i, j) / tr;
  rho = w;
  return true;
}

}  // namespace sepprob

#endif  // SEPPROB_QUANTUM_DENSITY_HPP
