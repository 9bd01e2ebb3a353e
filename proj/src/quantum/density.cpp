#include "sepprob/quantum/density.hpp"

#include <algorithm>
#include <ostream>

namespace sepprob {

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '(' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ')';
}

Matrix8cd complex_embedding(const Matrix4<Quaternion>& m) {
  Matrix8cd e;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) e.block<2, 2>(2 * i, 2 * j) = complex_block(m(i, j));
  return e;
}

double determinant(const Matrix4<double>& m) { return m.determinant(); }

double determinant(const Matrix4<std::complex<double>>& m) {
  std::complex<double> d = m.determinant();
  if (std::abs(d.imag()) > 1e-10)
    throw NumericalError("determinant: imaginary part " + std::to_string(d.imag()) +
                         " of a Hermitian determinant exceeds 1e-10");
  return d.real();
}

std::array<double, 9> characteristic_polynomial(const Matrix8cd& m) {
  std::array<double, 9> c{};
  c[8] = 1.0;
  Matrix8cd acc = Matrix8cd::Zero();
  for (int k = 1; k <= 8; ++k) {
    acc = m * acc;
    acc.diagonal().array() += c[9 - k];
    Matrix8cd am = m * acc;
    c[8 - k] = -am.trace().real() / k;
  }
  return c;
}

double moore_determinant(const Matrix4<Quaternion>& m) {
  const std::array<double, 9> c = characteristic_polynomial(complex_embedding(m));
  // (x^4 + d3 x^3 + d2 x^2 + d1 x + d0)^2 == x^8 + c7 x^7 + ... + c0
  const double d3 = c[7] / 2;
  const double d2 = (c[6] - d3 * d3) / 2;
  const double d1 = (c[5] - 2 * d3 * d2) / 2;
  const double d0 = (c[4] - 2 * d3 * d1 - d2 * d2) / 2;
  const double residual = std::max({std::abs(2 * d3 * d0 + 2 * d2 * d1 - c[3]),
                                    std::abs(2 * d2 * d0 + d1 * d1 - c[2]),
                                    std::abs(2 * d1 * d0 - c[1]), std::abs(d0 * d0 - c[0])});
  double scale = 1.0;
  for (double v : c) scale = std::max(scale, std::abs(v));
  if (residual > 1e-8 * scale)
    throw NumericalError("moore_determinant: characteristic polynomial is not a perfect square (residual " +
                         std::to_string(residual) + ")");
  return d0;
}

double min_eigenvalue(const Matrix4<double>& m) {
  Eigen::SelfAdjointEigenSolver<Matrix4<double>> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double min_eigenvalue(const Matrix4<std::complex<double>>& m) {
  Eigen::SelfAdjointEigenSolver<Matrix4<std::complex<double>>> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double min_eigenvalue(const Matrix4<Quaternion>& m) {
  Eigen::SelfAdjointEigenSolver<Matrix8cd> solver(complex_embedding(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace sepprob
