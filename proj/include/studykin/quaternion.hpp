#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace studykin {

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Vector4 = Eigen::Matrix<Scalar, 4, 1>;

/// Real quaternion q0 + q1 i + q2 j + q3 k, stored as a dense 4-vector with
/// the scalar part first. Immutable once constructed.
template <typename Scalar>
class Quaternion {
 public:
  using Coeffs = Vector4<Scalar>;

  Quaternion() : c_(Coeffs::Zero()) {}
  Quaternion(Scalar q0, Scalar q1, Scalar q2, Scalar q3) : c_(q0, q1, q2, q3) {}
  explicit Quaternion(const Coeffs& coeffs) : c_(coeffs) {}
  Quaternion(Scalar scalar, const Vector3<Scalar>& vec)
      : c_(scalar, vec.x(), vec.y(), vec.z()) {}

  static Quaternion identity() { return {Scalar(1), Scalar(0), Scalar(0), Scalar(0)}; }
  static Quaternion unit_i() { return {Scalar(0), Scalar(1), Scalar(0), Scalar(0)}; }
  static Quaternion unit_j() { return {Scalar(0), Scalar(0), Scalar(1), Scalar(0)}; }
  static Quaternion unit_k() { return {Scalar(0), Scalar(0), Scalar(0), Scalar(1)}; }

  Scalar q0() const { return c_[0]; }
  Scalar q1() const { return c_[1]; }
  Scalar q2() const { return c_[2]; }
  Scalar q3() const { return c_[3]; }
  Scalar operator[](Eigen::Index i) const { return c_[i]; }

  const Coeffs& coeffs() const { return c_; }
  Vector3<Scalar> vec() const { return c_.template tail<3>(); }

  template <typename Other>
  Quaternion<Other> cast() const {
    return Quaternion<Other>(c_.template cast<Other>());
  }

  Quaternion operator-() const { return Quaternion(Coeffs(-c_)); }
  friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return Quaternion(Coeffs(a.c_ + b.c_));
  }
  friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return Quaternion(Coeffs(a.c_ - b.c_));
  }
  friend Quaternion operator*(Scalar s, const Quaternion& a) {
    return Quaternion(Coeffs(s * a.c_));
  }
  friend Quaternion operator*(const Quaternion& a, Scalar s) { return s * a; }
  friend Quaternion operator/(const Quaternion& a, Scalar s) {
    return Quaternion(Coeffs(a.c_ / s));
  }
  friend bool operator==(const Quaternion& a, const Quaternion& b) { return a.c_ == b.c_; }

 private:
  Coeffs c_;
};

using Quaterniond = Quaternion<double>;

/// Hamilton product.
template <typename Scalar>
Quaternion<Scalar> qmul(const Quaternion<Scalar>& a, const Quaternion<Scalar>& b) {
  return {a.q0() * b.q0() - a.q1() * b.q1() - a.q2() * b.q2() - a.q3() * b.q3(),
          a.q0() * b.q1() + a.q1() * b.q0() + a.q2() * b.q3() - a.q3() * b.q2(),
          a.q0() * b.q2() - a.q1() * b.q3() + a.q2() * b.q0() + a.q3() * b.q1(),
          a.q0() * b.q3() + a.q1() * b.q2() - a.q2() * b.q1() + a.q3() * b.q0()};
}

template <typename Scalar>
Quaternion<Scalar> operator*(const Quaternion<Scalar>& a, const Quaternion<Scalar>& b) {
  return qmul(a, b);
}

template <typename Scalar>
Quaternion<Scalar> qconj(const Quaternion<Scalar>& a) {
  return {a.q0(), -a.q1(), -a.q2(), -a.q3()};
}

template <typename Scalar>
Scalar qnorm2(const Quaternion<Scalar>& a) {
  return a.coeffs().squaredNorm();
}

template <typename Scalar>
Quaternion<Scalar> qpure(const Quaternion<Scalar>& a) {
  return {Scalar(0), a.q1(), a.q2(), a.q3()};
}

template <typename Scalar>
Scalar qscalar(const Quaternion<Scalar>& a) {
  return a.q0();
}

/// Euclidean inner product of the coefficient 4-vectors.
template <typename Scalar>
Scalar qdot(const Quaternion<Scalar>& a, const Quaternion<Scalar>& b) {
  return a.coeffs().dot(b.coeffs());
}

// =============================================================================
// Point embeddings
// =============================================================================

/// R^3 -> pure quaternions.
template <typename Scalar>
Quaternion<Scalar> embed3(const Vector3<Scalar>& p) {
  return {Scalar(0), p.x(), p.y(), p.z()};
}

/// R^4 -> quaternions, with the x0 coordinate as scalar part.
template <typename Scalar>
Quaternion<Scalar> embed4(const Vector4<Scalar>& p) {
  return Quaternion<Scalar>(p);
}

/// Inverse of embed3 on pure quaternions; any scalar part is dropped.
template <typename Scalar>
Vector3<Scalar> unembed3(const Quaternion<Scalar>& q) {
  return q.vec();
}

template <typename Scalar>
Vector4<Scalar> unembed4(const Quaternion<Scalar>& q) {
  return q.coeffs();
}

}  // namespace studykin
