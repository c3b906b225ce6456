#pragma once

#include <Eigen/Core>
#include <array>
#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "studykin/dual_quaternion.hpp"
#include "studykin/kinematics.hpp"

namespace studykin {

/// Straight line of P^7 through two projectively independent points, read as
/// the one-parameter X4 motion s -> s a + (1 - s) b.
class P7Line {
 public:
  /// Throws bad_input when a and b are proportional and degenerate_line when
  /// the whole line lies in the generator space G.
  P7Line(const DualQuaterniond& a, const DualQuaterniond& b, double tol = kDefaultTol);

  const DualQuaterniond& a() const { return a_; }
  const DualQuaterniond& b() const { return b_; }

  /// Homogeneous point s a + (1 - s) b, not normalized. May lie in G.
  Vector8<double> point_at(double s) const;

  /// Parameter at which the line crosses G, if it does.
  std::optional<double> generator_puncture(double tol = kDefaultTol) const;

 private:
  DualQuaterniond a_;
  DualQuaterniond b_;
};

/// Pose of the line motion at s, scaled to |E| = 1. Throws on_generator_space
/// at a puncture of G.
DualQuaterniond motion_at(const P7Line& line, double s, double tol = kDefaultTol);

// =============================================================================
// Classification
// =============================================================================

struct TranslationMotion {
  Eigen::Vector4d direction;  // unit
};

struct PlaneRotationMotion {
  GrassmannPlane<double> plane;
  double height;  // common x0 shift of all poses
};

struct CircularDarbouxMotion {
  GrassmannPlane<double> plane;
  double c;    // radius of the circular translation, > 0
  double rho;  // phase in (-pi, pi] relative to x0, measured at the pose a
};

using MotionClass = std::variant<TranslationMotion, PlaneRotationMotion, CircularDarbouxMotion>;

MotionClass classify_line(const P7Line& line, double tol = kDefaultTol);

/// "translation", "plane-rotation" or "circular-darboux".
std::string class_name(const MotionClass& cls);

/// One-line description, e.g. "circular-darboux c=0.5 rho=1.2".
std::string describe(const MotionClass& cls);

// =============================================================================
// Darboux generators
// =============================================================================

struct KargerParams {
  double beta = 0.0;
  double gamma = 1.0;
  double nu = 0.0;
  double tau = 0.0;

  /// Throws bad_input unless beta >= 0, gamma >= 1, nu >= 0.
  void validate() const;
};

/// Karger Type-1 Darboux 2-motion: rotation by tau in the x2x3-plane plus the
/// (beta, gamma, nu) translation.
Eigen::Vector4d karger_type1(const KargerParams& kp, const Eigen::Vector4d& p);

/// Translation part of the Karger Type-1 motion (image of the origin).
Eigen::Vector4d karger_translation(const KargerParams& kp);

/// c (cos rho sin tau - sin rho (1 - cos tau), sin rho sin tau + cos rho (1 - cos tau), 0, 0).
Eigen::Vector4d circular_translation(double c, double rho, double tau);

/// X4 displacement of the canonical circular Darboux motion at tau: rotation by
/// tau in the x2x3-plane with the circular translation of (c, rho).
DualQuaterniond circular_darboux_pose(double c, double rho, double tau);

/// The canonical line (1; 0) - (i; -c cos rho + c sin rho i).
P7Line canonical_darboux_line(double c, double rho);

// =============================================================================
// Trajectories
// =============================================================================

struct Trajectory {
  std::vector<double> params;
  std::vector<Eigen::Vector4d> points;
};

Trajectory sample_trajectory(const P7Line& line, const Eigen::Vector4d& p,
                             const std::vector<double>& params, double tol = kDefaultTol);

enum class CircleVerdict { circle, fixed_point, line_segment, not_circular };

std::string to_string(CircleVerdict verdict);

struct CircleCertificate {
  CircleVerdict verdict = CircleVerdict::not_circular;
  Eigen::Vector4d center = Eigen::Vector4d::Zero();
  double radius = 0.0;
  double max_deviation = 0.0;  // max | |p - center| - radius |, relative to radius
  double plane_residual = 0.0; // max distance from the fitted 2-plane, relative to spread
  bool accepted() const { return verdict == CircleVerdict::circle; }
};

/// Metric concyclicity test. Needs at least five samples.
CircleCertificate is_circular(const Trajectory& traj, double tol = 1e-8);

/// Trajectory given by quadratic polynomials, x_k(s) = numerator_k(s) / denominator(s).
/// Coefficients are stored lowest degree first.
struct RationalTrajectory {
  std::array<Eigen::Vector3d, 4> numerators;
  Eigen::Vector3d denominator;
};

RationalTrajectory rational_trajectory(const P7Line& line, const Eigen::Vector4d& p);

/// Karger Type-1 trajectory after the half-angle substitution t = tan(tau / 2).
RationalTrajectory rational_trajectory(KargerParams kp, const Eigen::Vector4d& p);

struct AbsoluteSphereCertificate {
  bool on_absolute = false;
  bool degenerate = false;              // trajectory is a single point
  std::complex<double> ideal_parameter; // root of the denominator
  double residual = 0.0;                // |sum N_k(r)^2| / sum |N_k(r)|^2
};

/// Projective concyclicity test: a conic is a circle iff its two points at
/// infinity lie on the absolute sphere h0^2 + h1^2 + h2^2 + h3^2 = 0.
AbsoluteSphereCertificate absolute_sphere_test(const RationalTrajectory& traj, double tol = 1e-8);

}  // namespace studykin
