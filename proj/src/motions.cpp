#include "studykin/motions.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "studykin/format.hpp"

namespace studykin {

namespace {

using Eigen::Vector4d;

double e_ratio(const Vector8<double>& v) {
  const double total = v.norm();
  return total == 0.0 ? 0.0 : v.head<4>().norm() / total;
}

DualQuaterniond unit_e(const DualQuaterniond& x) {
  return (1.0 / std::sqrt(qnorm2(x.e()))) * x;
}

// Two points of the line, both off G, preferring the given pair (a, b).
struct RegularPair {
  DualQuaterniond p;
  DualQuaterniond q;
};

RegularPair regular_pair(const P7Line& line) {
  constexpr double kWellConditioned = 1e-3;
  const double ra = e_ratio(line.a().coords());
  const double rb = e_ratio(line.b().coords());
  if (ra > kWellConditioned && rb > kWellConditioned) {
    return {unit_e(line.a()), unit_e(line.b())};
  }
  const double candidates[] = {1.0, 0.0, 0.5, 2.0, -1.0, 1.0 / 3.0};
  std::vector<std::pair<double, double>> scored;
  for (double s : candidates) scored.emplace_back(e_ratio(line.point_at(s)), s);
  std::sort(scored.begin(), scored.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  return {unit_e(DualQuaterniond(line.point_at(scored[0].second))),
          unit_e(DualQuaterniond(line.point_at(scored[1].second)))};
}

// Quadratic through f(0), f(1/2), f(1); coefficients lowest degree first.
Eigen::Vector3d quadratic_from_samples(double f0, double fh, double f1) {
  const double c2 = 2.0 * (f1 - 2.0 * fh + f0);
  return {f0, f1 - f0 - c2, c2};
}

}  // namespace

// =============================================================================
// P7Line
// =============================================================================

P7Line::P7Line(const DualQuaterniond& a, const DualQuaterniond& b, double tol) : a_(a), b_(b) {
  if (projectively_equal(a, b, tol)) {
    throw Error(ErrorCode::bad_input, "a line needs two distinct points of P^7");
  }
  const double scale = std::max(a.coords().norm(), b.coords().norm());
  if (a.e().coeffs().norm() <= tol * scale && b.e().coeffs().norm() <= tol * scale) {
    throw Error(ErrorCode::degenerate_line, "line lies in the generator space G");
  }
}

Vector8<double> P7Line::point_at(double s) const {
  return s * a_.coords() + (1.0 - s) * b_.coords();
}

std::optional<double> P7Line::generator_puncture(double tol) const {
  // s (Ea - Eb) + Eb = 0
  const Vector4d d = a_.e().coeffs() - b_.e().coeffs();
  const Vector4d eb = b_.e().coeffs();
  const double dd = d.squaredNorm();
  if (dd == 0.0) return std::nullopt;
  const double s = -eb.dot(d) / dd;
  const Vector8<double> v = point_at(s);
  if (v.head<4>().norm() <= tol * v.norm()) return s;
  return std::nullopt;
}

DualQuaterniond motion_at(const P7Line& line, double s, double tol) {
  const Vector8<double> v = line.point_at(s);
  const double ne = v.head<4>().norm();
  if (ne <= tol * v.norm()) {
    throw Error(ErrorCode::on_generator_space,
                "line meets the generator space G at s = " + format_double(s));
  }
  return DualQuaterniond(Vector8<double>(v / ne));
}

// =============================================================================
// Classification
// =============================================================================

MotionClass classify_line(const P7Line& line, double tol) {
  const auto [p, q] = regular_pair(line);
  const Quaterniond w = q.e() * qconj(p.e());

  // (i) common orientation: only the translation varies
  if (w.vec().norm() <= tol) {
    const Vector4d dir = translation4(q) - translation4(p);
    if (dir.norm() <= tol) {
      throw Error(ErrorCode::bad_input, "classify_line: points coincide projectively");
    }
    return TranslationMotion{dir.normalized()};
  }

  // (ii) e(s).t(s) / |E(s)|^2 constant along the line. Both numerator and
  // denominator are quadratic forms in (s, 1 - s); compare their coefficients.
  const Eigen::Vector3d num(qdot(p.e(), p.t()), qdot(p.e(), q.t()) + qdot(q.e(), p.t()),
                            qdot(q.e(), q.t()));
  const Eigen::Vector3d den(1.0, 2.0 * qdot(p.e(), q.e()), 1.0);
  const double k = num.dot(den) / den.squaredNorm();
  if ((num - k * den).lpNorm<Eigen::Infinity>() <= tol) {
    return PlaneRotationMotion{gamma_plane(q * inverse(p)), -2.0 * k};
  }

  // (iii) circular Darboux motion. Relative poses r(sigma) = x(sigma) p^-1 share
  // the rotation axis u; their translation, restricted to span(I, u), is the
  // circular translation of parameters (c, rho).
  const Vector3<double> u = w.vec().normalized();
  const auto p_inv = inverse(p);
  constexpr int kSamples = 12;
  Eigen::Matrix<double, 2 * kSamples, 2> design;
  Eigen::Matrix<double, 2 * kSamples, 1> rhs;
  for (int j = 0; j < kSamples; ++j) {
    const double sigma = double(j + 1) / double(kSamples + 1);
    const double ch = sigma + (1.0 - sigma) * w.q0();
    const double sh = (1.0 - sigma) * w.vec().norm();
    const double r2 = ch * ch + sh * sh;
    const double cos_tau = (ch * ch - sh * sh) / r2;
    const double sin_tau = 2.0 * ch * sh / r2;
    const DualQuaterniond x(Vector8<double>(sigma * p.coords() + (1.0 - sigma) * q.coords()));
    const Vector4d c = translation4(x * p_inv);
    design.row(2 * j) << sin_tau, -(1.0 - cos_tau);
    design.row(2 * j + 1) << 1.0 - cos_tau, sin_tau;
    rhs(2 * j) = c[0];
    rhs(2 * j + 1) = c.tail<3>().dot(u);
  }
  const Eigen::Vector2d ab = design.colPivHouseholderQr().solve(rhs);
  const DualQuaterniond mid(Vector8<double>(0.5 * (p.coords() + q.coords())));
  return CircularDarbouxMotion{gamma_plane(mid * p_inv), std::hypot(ab[0], ab[1]),
                               std::atan2(ab[1], ab[0])};
}

std::string class_name(const MotionClass& cls) {
  switch (cls.index()) {
    case 0: return "translation";
    case 1: return "plane-rotation";
    default: return "circular-darboux";
  }
}

std::string describe(const MotionClass& cls) {
  std::ostringstream out;
  out << class_name(cls);
  if (const auto* t = std::get_if<TranslationMotion>(&cls)) {
    out << " dir=(" << format_double(t->direction[0]) << "," << format_double(t->direction[1])
        << "," << format_double(t->direction[2]) << "," << format_double(t->direction[3]) << ")";
  } else if (const auto* r = std::get_if<PlaneRotationMotion>(&cls)) {
    out << " height=" << format_double(r->height);
  } else if (const auto* d = std::get_if<CircularDarbouxMotion>(&cls)) {
    out << " c=" << format_double(d->c) << " rho=" << format_double(d->rho);
  }
  return out.str();
}

// =============================================================================
// Darboux generators
// =============================================================================

void KargerParams::validate() const {
  if (!(beta >= 0.0) || !(gamma >= 1.0) || !(nu >= 0.0)) {
    throw Error(ErrorCode::bad_input, "Karger parameters need beta >= 0, gamma >= 1, nu >= 0");
  }
}

Eigen::Vector4d karger_translation(const KargerParams& kp) {
  kp.validate();
  const double ct = std::cos(kp.tau);
  const double st = std::sin(kp.tau);
  const double f = kp.beta / (2.0 * std::sqrt(kp.gamma));
  return {f * (kp.gamma * st + 1.0 - ct), f * std::sqrt(kp.gamma * kp.gamma - 1.0) * (1.0 - ct),
          0.0, 0.5 * kp.nu * (ct - 1.0)};
}

Eigen::Vector4d karger_type1(const KargerParams& kp, const Eigen::Vector4d& p) {
  const double ct = std::cos(kp.tau);
  const double st = std::sin(kp.tau);
  const Vector4d rotated(p[0], p[1], ct * p[2] - st * p[3], st * p[2] + ct * p[3]);
  return rotated + karger_translation(kp);
}

Eigen::Vector4d circular_translation(double c, double rho, double tau) {
  const double ct = std::cos(tau);
  const double st = std::sin(tau);
  const double cr = std::cos(rho);
  const double sr = std::sin(rho);
  return {c * (cr * st - sr * (1.0 - ct)), c * (sr * st + cr * (1.0 - ct)), 0.0, 0.0};
}

DualQuaterniond circular_darboux_pose(double c, double rho, double tau) {
  const Quaterniond e(std::cos(0.5 * tau), std::sin(0.5 * tau), 0.0, 0.0);
  return from_rotation_translation(e, circular_translation(c, rho, tau));
}

P7Line canonical_darboux_line(double c, double rho) {
  return P7Line(DualQuaterniond(Quaterniond::identity(), Quaterniond()),
                DualQuaterniond(Quaterniond::unit_i(),
                                Quaterniond(-c * std::cos(rho), c * std::sin(rho), 0.0, 0.0)));
}

// =============================================================================
// Trajectories
// =============================================================================

Trajectory sample_trajectory(const P7Line& line, const Eigen::Vector4d& p,
                             const std::vector<double>& params, double tol) {
  Trajectory traj;
  traj.params = params;
  traj.points.reserve(params.size());
  for (double s : params) traj.points.push_back(act_x4(motion_at(line, s, tol), p));
  return traj;
}

std::string to_string(CircleVerdict verdict) {
  switch (verdict) {
    case CircleVerdict::circle: return "circle";
    case CircleVerdict::fixed_point: return "fixed_point";
    case CircleVerdict::line_segment: return "line_segment";
    case CircleVerdict::not_circular: return "not_circular";
  }
  return "not_circular";
}

CircleCertificate is_circular(const Trajectory& traj, double tol) {
  const auto m = static_cast<Eigen::Index>(traj.points.size());
  if (m < 5) {
    throw Error(ErrorCode::bad_input, "is_circular needs at least five samples");
  }
  Eigen::MatrixXd pts(m, 4);
  for (Eigen::Index i = 0; i < m; ++i) pts.row(i) = traj.points[i].transpose();
  const Eigen::RowVector4d centroid = pts.colwise().mean();
  const Eigen::MatrixXd centered = pts.rowwise() - centroid;
  const double spread = centered.rowwise().norm().maxCoeff();

  CircleCertificate cert;
  if (spread <= tol * std::max(1.0, centroid.norm())) {
    cert.verdict = CircleVerdict::fixed_point;
    cert.center = centroid.transpose();
    return cert;
  }

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
  const Eigen::Vector4d v1 = svd.matrixV().col(0);
  const Eigen::Vector4d v2 = svd.matrixV().col(1);
  double line_residual = 0.0;
  double plane_residual = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Vector4d y = centered.row(i).transpose();
    const Eigen::Vector4d off_line = y - y.dot(v1) * v1;
    line_residual = std::max(line_residual, off_line.norm());
    plane_residual = std::max(plane_residual, (off_line - y.dot(v2) * v2).norm());
  }
  cert.plane_residual = plane_residual / spread;
  if (line_residual <= tol * spread) {
    cert.verdict = CircleVerdict::line_segment;
    cert.center = centroid.transpose();
    return cert;
  }
  if (cert.plane_residual > tol) {
    cert.verdict = CircleVerdict::not_circular;
    return cert;
  }

  // circumcenter of three well-spread samples
  const Eigen::Vector4d x0 = pts.row(0).transpose();
  Eigen::Index i1 = 0;
  (pts.rowwise() - x0.transpose()).rowwise().norm().maxCoeff(&i1);
  const Eigen::Vector4d a = pts.row(i1).transpose() - x0;
  const Eigen::Vector4d a_hat = a.normalized();
  Eigen::Index i2 = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Vector4d y = pts.row(i).transpose() - x0;
    const double dist = (y - y.dot(a_hat) * a_hat).norm();
    if (dist > best) {
      best = dist;
      i2 = i;
    }
  }
  const Eigen::Vector4d b = pts.row(i2).transpose() - x0;
  Eigen::Matrix2d gram;
  gram << a.dot(a), a.dot(b), a.dot(b), b.dot(b);
  const Eigen::Vector2d coef = gram.ldlt().solve(Eigen::Vector2d(0.5 * a.dot(a), 0.5 * b.dot(b)));
  cert.center = x0 + coef[0] * a + coef[1] * b;
  cert.radius = (x0 - cert.center).norm();
  double deviation = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    deviation = std::max(deviation,
                         std::abs((pts.row(i).transpose() - cert.center).norm() - cert.radius));
  }
  cert.max_deviation = deviation / cert.radius;
  cert.verdict = cert.max_deviation <= tol ? CircleVerdict::circle : CircleVerdict::not_circular;
  return cert;
}

RationalTrajectory rational_trajectory(const P7Line& line, const Eigen::Vector4d& p) {
  const auto numerator = [&](double s) {
    const DualQuaterniond x(line.point_at(s));
    const auto& e = x.e();
    return unembed4(e * embed4(p) * qconj(e) - 2.0 * (e * qconj(x.t())));
  };
  const auto denominator = [&](double s) { return line.point_at(s).head<4>().squaredNorm(); };
  const Vector4d n0 = numerator(0.0);
  const Vector4d nh = numerator(0.5);
  const Vector4d n1 = numerator(1.0);
  RationalTrajectory out;
  for (int k = 0; k < 4; ++k) out.numerators[k] = quadratic_from_samples(n0[k], nh[k], n1[k]);
  out.denominator = quadratic_from_samples(denominator(0.0), denominator(0.5), denominator(1.0));
  return out;
}

RationalTrajectory rational_trajectory(KargerParams kp, const Eigen::Vector4d& p) {
  const auto homogeneous = [&](double t) {
    kp.tau = 2.0 * std::atan(t);
    return Vector4d((1.0 + t * t) * karger_type1(kp, p));
  };
  const Vector4d fm = homogeneous(-1.0);
  const Vector4d f0 = homogeneous(0.0);
  const Vector4d fp = homogeneous(1.0);
  RationalTrajectory out;
  for (int k = 0; k < 4; ++k) {
    out.numerators[k] = {f0[k], 0.5 * (fp[k] - fm[k]), 0.5 * (fp[k] + fm[k]) - f0[k]};
  }
  out.denominator = {1.0, 0.0, 1.0};
  return out;
}

AbsoluteSphereCertificate absolute_sphere_test(const RationalTrajectory& traj, double tol) {
  using cplx = std::complex<double>;
  AbsoluteSphereCertificate cert;
  const Eigen::Vector3d& d = traj.denominator;
  if (std::abs(d[2]) <= tol * d.norm()) return cert;  // not a proper conic
  const cplx disc = cplx(d[1] * d[1] - 4.0 * d[2] * d[0], 0.0);
  if (disc.real() >= 0.0) return cert;  // real ideal points: hyperbola or parabola
  const cplx root = (-d[1] + std::sqrt(disc)) / (2.0 * d[2]);
  cert.ideal_parameter = root;

  cplx sum_sq = 0.0;
  double sum_abs = 0.0;
  double coeff_scale = 0.0;
  for (const auto& n : traj.numerators) {
    const cplx value = n[0] + root * (n[1] + root * n[2]);
    sum_sq += value * value;
    sum_abs += std::norm(value);
    coeff_scale += n.squaredNorm();
  }
  if (sum_abs <= tol * tol * std::max(coeff_scale, 1e-300)) {
    cert.degenerate = true;
    cert.on_absolute = true;
    return cert;
  }
  cert.residual = std::abs(sum_sq) / sum_abs;
  cert.on_absolute = cert.residual <= tol;
  return cert;
}

}  // namespace studykin
