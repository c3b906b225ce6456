#pragma once

#include <cmath>

#include "studykin/error.hpp"
#include "studykin/quaternion.hpp"

namespace studykin {

template <typename Scalar>
using Vector8 = Eigen::Matrix<Scalar, 8, 1>;

/// Dual quaternion E + eps T with eps^2 = 0, read as the homogeneous point
/// (e0 : e1 : e2 : e3 : t0 : t1 : t2 : t3) of P^7.
///
/// The all-zero 8-tuple is rejected. E = 0 (the generator space G) is a valid
/// P^7 point but carries no displacement; see in_f().
template <typename Scalar>
class DualQuaternion {
 public:
  using QuaternionType = Quaternion<Scalar>;

  DualQuaternion() : e_(QuaternionType::identity()), t_() {}

  DualQuaternion(const QuaternionType& e, const QuaternionType& t) : e_(e), t_(t) {
    if (e_.coeffs().isZero(0) && t_.coeffs().isZero(0)) {
      throw Error(ErrorCode::bad_input, "zero dual quaternion is not a point of P^7");
    }
    if (!e_.coeffs().allFinite() || !t_.coeffs().allFinite()) {
      throw Error(ErrorCode::bad_input, "dual quaternion has non-finite coordinates");
    }
  }

  explicit DualQuaternion(const Vector8<Scalar>& coords)
      : DualQuaternion(QuaternionType(Vector4<Scalar>(coords.template head<4>())),
                       QuaternionType(Vector4<Scalar>(coords.template tail<4>()))) {}

  static DualQuaternion identity() { return {}; }

  const QuaternionType& e() const { return e_; }
  const QuaternionType& t() const { return t_; }

  Vector8<Scalar> coords() const {
    Vector8<Scalar> out;
    out << e_.coeffs(), t_.coeffs();
    return out;
  }

  template <typename Other>
  DualQuaternion<Other> cast() const {
    return DualQuaternion<Other>(e_.template cast<Other>(), t_.template cast<Other>());
  }

  friend DualQuaternion operator*(Scalar s, const DualQuaternion& x) {
    return DualQuaternion(s * x.e_, s * x.t_);
  }

 private:
  QuaternionType e_;
  QuaternionType t_;
};

using DualQuaterniond = DualQuaternion<double>;

/// Product with eps^2 = 0.
template <typename Scalar>
DualQuaternion<Scalar> dq_mul(const DualQuaternion<Scalar>& a, const DualQuaternion<Scalar>& b) {
  return {a.e() * b.e(), a.e() * b.t() + a.t() * b.e()};
}

template <typename Scalar>
DualQuaternion<Scalar> operator*(const DualQuaternion<Scalar>& a, const DualQuaternion<Scalar>& b) {
  return dq_mul(a, b);
}

/// Polar form of the Study quadric: e(x).t(y) + e(y).t(x).
template <typename Scalar>
Scalar study_bilinear(const DualQuaternion<Scalar>& x, const DualQuaternion<Scalar>& y) {
  return qdot(x.e(), y.t()) + qdot(y.e(), x.t());
}

/// Canonical representative: |E| = 1 and the first nonzero coordinate of E
/// positive. Points of G are scaled to |T| = 1 with the same sign rule on T.
template <typename Scalar>
DualQuaternion<Scalar> normalize(const DualQuaternion<Scalar>& x) {
  using std::sqrt;
  const Scalar ne = sqrt(qnorm2(x.e()));
  const bool generator = ne == Scalar(0);
  const Scalar scale = generator ? sqrt(qnorm2(x.t())) : ne;
  const auto& lead = generator ? x.t() : x.e();
  Scalar sign(1);
  for (int i = 0; i < 4; ++i) {
    using std::abs;
    if (abs(lead[i]) > Scalar(1e-12) * scale) {
      sign = lead[i] < Scalar(0) ? Scalar(-1) : Scalar(1);
      break;
    }
  }
  return (sign / scale) * x;
}

/// x lies in F (a displacement of the group X4), i.e. E is not zero.
template <typename Scalar>
bool in_f(const DualQuaternion<Scalar>& x, Scalar tol = Scalar(kDefaultTol)) {
  using std::sqrt;
  const Scalar scale = sqrt(x.coords().squaredNorm());
  return sqrt(qnorm2(x.e())) > tol * scale;
}

/// x lies in E: off G and on the Study quadric.
template <typename Scalar>
bool in_e(const DualQuaternion<Scalar>& x, Scalar tol = Scalar(kDefaultTol)) {
  using std::abs;
  if (!in_f(x, tol)) return false;
  const auto n = normalize(x);
  return abs(study_bilinear(n, n)) <= tol;
}

/// Group inverse in F: (conj E, -conj E T conj E / |E|^2). Throws for E = 0.
template <typename Scalar>
DualQuaternion<Scalar> inverse(const DualQuaternion<Scalar>& x) {
  const Scalar n = qnorm2(x.e());
  if (n == Scalar(0)) {
    throw Error(ErrorCode::on_generator_space, "points of G have no inverse");
  }
  const auto ce = qconj(x.e());
  return {ce, -(ce * x.t() * ce) / n};
}

/// Projective equality of two P^7 points within tol on canonical representatives.
template <typename Scalar>
bool projectively_equal(const DualQuaternion<Scalar>& x, const DualQuaternion<Scalar>& y,
                        Scalar tol = Scalar(kDefaultTol)) {
  const Vector8<Scalar> a = x.coords().normalized();
  const Vector8<Scalar> b = y.coords().normalized();
  return (a - b).template lpNorm<Eigen::Infinity>() <= tol ||
         (a + b).template lpNorm<Eigen::Infinity>() <= tol;
}

}  // namespace studykin
