#ifndef SEPPROB_QUANTUM_QUATERNION_HPP
#define SEPPROB_QUANTUM_QUATERNION_HPP

#include <Eigen/Core>
#include <complex>
#include <iosfwd>

namespace sepprob {

/// w + x i + y j + z k with Hamilton's product. Not commutative: keep the
/// operand order of every product.
struct Quaternion {
  double w = 0, x = 0, y = 0, z = 0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_) : w(w_) {}  // NOLINT(google-explicit-constructor)
  constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

  constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
  constexpr Quaternion conjugate() const { return {w, -x, -y, -z}; }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(const Quaternion& o) { return *this = *this * o; }
  constexpr Quaternion& operator/=(double s) {
    w /= s; x /= s; y /= s; z /= s;
    return *this;
  }

  friend constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
  friend constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
  friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }
  friend constexpr Quaternion operator/(Quaternion a, double s) { return a /= s; }
  friend constexpr bool operator==(const Quaternion& a, const Quaternion& b) {
    return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
  }
  friend constexpr bool operator!=(const Quaternion& a, const Quaternion& b) { return !(a == b); }
};

constexpr Quaternion conj(const Quaternion& q) { return q.conjugate(); }
constexpr double conj(double v) { return v; }
inline std::complex<double> conj(const std::complex<double>& v) { return std::conj(v); }

/// 2x2 complex block [[w+xi, y+zi], [-y+zi, w-xi]]; a ring homomorphism.
inline Eigen::Matrix2cd complex_block(const Quaternion& q) {
  Eigen::Matrix2cd b;
  b << std::complex<double>(q.w, q.x), std::complex<double>(q.y, q.z),
      std::complex<double>(-q.y, q.z), std::complex<double>(q.w, -q.x);
  return b;
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

}  // namespace sepprob

namespace Eigen {

template <>
struct NumTraits<sepprob::Quaternion> : GenericNumTraits<double> {
  using Real = double;
  using NonInteger = sepprob::Quaternion;
  using Nested = sepprob::Quaternion;
  using Literal = sepprob::Quaternion;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 0,
    ReadCost = 4,
    AddCost = 4,
    MulCost = 28
  };
};

}  // namespace Eigen

#endif  // SEPPROB_QUANTUM_QUATERNION_HPP
