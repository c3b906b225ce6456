#pragma once

#include <cmath>
#include <optional>

#include "studykin/dual_quaternion.hpp"

namespace studykin {

// =============================================================================
// Displacement actions
// =============================================================================

/// SE(3) action of an on-quadric dual quaternion on a point of E^3:
///   p -> (E p conj(E) + T conj(E) - E conj(T)) / |E|^2.
/// The division by |E|^2 makes the action independent of the representative.
template <typename Scalar>
Vector3<Scalar> act_se3(const DualQuaternion<Scalar>& x, const Vector3<Scalar>& p,
                        Scalar tol = Scalar(kDefaultTol)) {
  if (!in_f(x, tol)) {
    throw Error(ErrorCode::on_generator_space, "act_se3: E = 0 carries no displacement");
  }
  const auto n = normalize(x);
  using std::abs;
  if (abs(study_bilinear(n, n)) > tol) {
    throw Error(ErrorCode::off_quadric, "act_se3: input violates the Study condition");
  }
  const auto& e = n.e();
  const auto& t = n.t();
  const auto image = e * embed3(p) * qconj(e) + (t * qconj(e) - e * qconj(t));
  return unembed3(image);
}

/// X4 action on a point of E^4: P -> (E P conj(E) - 2 E conj(T)) / |E|^2.
template <typename Scalar>
Vector4<Scalar> act_x4(const DualQuaternion<Scalar>& x, const Vector4<Scalar>& p) {
  const Scalar n = qnorm2(x.e());
  if (n == Scalar(0)) {
    throw Error(ErrorCode::on_generator_space, "act_x4: E = 0 carries no displacement");
  }
  const auto& e = x.e();
  const auto image = e * embed4(p) * qconj(e) - Scalar(2) * (e * qconj(x.t()));
  return unembed4(image) / n;
}

/// Translation of every point along x0: -2 (e.t) / |E|^2. Zero exactly on the
/// Study quadric.
template <typename Scalar>
Scalar x0_shift(const DualQuaternion<Scalar>& x) {
  const Scalar n = qnorm2(x.e());
  if (n == Scalar(0)) {
    throw Error(ErrorCode::on_generator_space, "x0_shift: E = 0 carries no displacement");
  }
  // adding +0 turns a negated exact zero into +0 for clean payloads
  return Scalar(-2) * qdot(x.e(), x.t()) / n + Scalar(0);
}

/// Projection of F onto the Study quadric: T -> T - (e.t / |E|^2) E.
template <typename Scalar>
DualQuaternion<Scalar> psh(const DualQuaternion<Scalar>& x) {
  const Scalar n = qnorm2(x.e());
  if (n == Scalar(0)) {
    throw Error(ErrorCode::on_generator_space, "psh: undefined on the generator space G");
  }
  const Scalar k = qdot(x.e(), x.t()) / n;
  return {x.e(), x.t() - k * x.e()};
}

/// The X4 displacement with unit rotation quaternion `e` followed by the
/// translation `c`, i.e. P -> e P conj(e) + c.
template <typename Scalar>
DualQuaternion<Scalar> from_rotation_translation(const Quaternion<Scalar>& e,
                                                 const Vector4<Scalar>& c) {
  return {e, Scalar(-0.5) * (qconj(embed4(c)) * e)};
}

/// Translation 4-vector of an X4 displacement, -2 E conj(T) / |E|^2.
template <typename Scalar>
Vector4<Scalar> translation4(const DualQuaternion<Scalar>& x) {
  return act_x4(x, Vector4<Scalar>::Zero().eval());
}

// =============================================================================
// Rotation plane geometry
// =============================================================================

/// Pointwise fixed plane of P -> E P conj(E): spanned by I = (1,0,0,0) and
/// dir_e = E; angle = 2 atan2(|e|, e0) in [0, 2 pi).
template <typename Scalar>
struct PlaneThroughOrigin {
  bool span_i = true;
  Vector4<Scalar> dir_e;
  Scalar angle;
};

/// Returns std::nullopt when E = +-1 (identity rotation, plane undefined).
template <typename Scalar>
std::optional<PlaneThroughOrigin<Scalar>> rotation_plane_angle(const Quaternion<Scalar>& e,
                                                               Scalar tol = Scalar(kDefaultTol)) {
  using std::atan2;
  using std::sqrt;
  const Scalar ne = sqrt(qnorm2(e));
  if (ne == Scalar(0)) {
    throw Error(ErrorCode::on_generator_space, "rotation_plane_angle: E = 0");
  }
  const Vector4<Scalar> unit = e.coeffs() / ne;
  const Scalar vec_norm = unit.template tail<3>().norm();
  if (vec_norm <= tol) return std::nullopt;
  return PlaneThroughOrigin<Scalar>{true, unit, Scalar(2) * atan2(vec_norm, unit[0])};
}

/// Grassmann coordinates (lbar, lhat, moment) of the invariant plane Gamma of an
/// X4 displacement. lhat is always zero since Gamma is parallel to x0.
template <typename Scalar>
struct GrassmannPlane {
  Quaternion<Scalar> lbar;
  Quaternion<Scalar> lhat;
  Quaternion<Scalar> moment;
};

template <typename Scalar>
GrassmannPlane<Scalar> gamma_plane(const DualQuaternion<Scalar>& x, Scalar tol = Scalar(kDefaultTol)) {
  using std::sqrt;
  const auto& e = x.e();
  const auto& t = x.t();
  const auto pure_e = qpure(e);
  const Scalar scale = sqrt(qnorm2(e));
  if (scale == Scalar(0)) {
    throw Error(ErrorCode::on_generator_space, "gamma_plane: E = 0");
  }
  if (sqrt(qnorm2(pure_e)) <= tol * scale) {
    throw Error(ErrorCode::bad_input, "gamma_plane: pure translations have no rotation plane");
  }
  const auto lbar = pure_e / qscalar(pure_e * qconj(pure_e));
  const auto diff = e - qconj(e);
  const auto numerator = diff * (lbar * t - t * lbar);
  const Scalar denominator = qscalar(diff * (qconj(e) - e));
  return {lbar, Quaternion<Scalar>(), numerator / denominator};
}

template <typename Scalar>
struct Line3 {
  Vector3<Scalar> point;      // foot point closest to the origin
  Vector3<Scalar> direction;  // unit
};

/// Axis of an SE(3) displacement read off as the intersection of Gamma with
/// the hyperplane x0 = k. Gamma is parallel to x0, so the axis does not depend
/// on k.
template <typename Scalar>
Line3<Scalar> axis_in_hyperplane(const DualQuaternion<Scalar>& x, Scalar k = Scalar(0),
                                 Scalar tol = Scalar(kDefaultTol)) {
  (void)k;
  if (!in_e(x, tol)) {
    if (!in_f(x, tol)) throw Error(ErrorCode::on_generator_space, "axis_in_hyperplane: E = 0");
    throw Error(ErrorCode::off_quadric, "axis_in_hyperplane: input violates the Study condition");
  }
  const auto plane = gamma_plane(normalize(x), tol);
  const Vector3<Scalar> l = plane.lbar.vec();
  const Vector3<Scalar> m = plane.moment.vec();
  return {m.cross(l) / l.squaredNorm(), l.normalized()};
}

// =============================================================================
// Height-labelled projection
// =============================================================================

template <typename Scalar>
struct ProjectedPose {
  DualQuaternion<Scalar> pose;  // on the Study quadric
  Scalar height;                // x0 displacement lost by the projection
};

template <typename Scalar>
ProjectedPose<Scalar> kotierte_projection(const DualQuaternion<Scalar>& x) {
  return {psh(x), x0_shift(x)};
}

/// Displacement with the same projected SE(3) pose as x and the given x0 height.
template <typename Scalar>
DualQuaternion<Scalar> with_height(const DualQuaternion<Scalar>& x, Scalar height) {
  const auto base = psh(x);
  return {base.e(), base.t() + (Scalar(-0.5) * height) * base.e()};
}

// =============================================================================
// SE(3) motion type
// =============================================================================

enum class Se3Kind { identity, translation, rotation, screw };

template <typename Scalar>
struct Se3Type {
  Se3Kind kind;
  Scalar angle;  // rotation angle in [0, 2 pi), 0 for translations
  Scalar slide;  // translation component along the axis
};

/// Classifies an on-quadric displacement by the Chasles decomposition.
template <typename Scalar>
Se3Type<Scalar> se3_motion_type(const DualQuaternion<Scalar>& x, Scalar tol = Scalar(kDefaultTol)) {
  if (!in_e(x, tol)) {
    if (!in_f(x, tol)) throw Error(ErrorCode::on_generator_space, "se3_motion_type: E = 0");
    throw Error(ErrorCode::off_quadric, "se3_motion_type: input violates the Study condition");
  }
  const auto n = normalize(x);
  const Vector3<Scalar> d = act_se3(n, Vector3<Scalar>::Zero().eval(), tol);
  const auto plane = rotation_plane_angle(n.e(), tol);
  if (!plane) {
    if (d.norm() <= tol) return {Se3Kind::identity, Scalar(0), Scalar(0)};
    return {Se3Kind::translation, Scalar(0), d.norm()};
  }
  const Vector3<Scalar> axis = n.e().vec().normalized();
  const Scalar slide = d.dot(axis);
  using std::abs;
  return {abs(slide) <= tol ? Se3Kind::rotation : Se3Kind::screw, plane->angle, slide};
}

}  // namespace studykin
