#include <cmath>
#include <numbers>

#include "doctest.h"
#include "studykin/motions.hpp"
#include "test_support.hpp"

using namespace studykin;

namespace {

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::bad_input;
}

std::vector<double> grid(int n, double lo, double hi) {
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) out[j] = lo + (hi - lo) * double(j) / double(n - 1);
  return out;
}

Eigen::Vector4d eval(const RationalTrajectory& r, double s) {
  Eigen::Vector4d out;
  const double d = r.denominator[0] + s * (r.denominator[1] + s * r.denominator[2]);
  for (int k = 0; k < 4; ++k) {
    out[k] = (r.numerators[k][0] + s * (r.numerators[k][1] + s * r.numerators[k][2])) / d;
  }
  return out;
}

}  // namespace

TEST_CASE("line construction") {
  testing::Gen gen(31);
  const auto a = gen.in_f();
  CHECK(code_of([&] { P7Line(a, -2.0 * a); }) == ErrorCode::bad_input);
  const DualQuaterniond g1(Quaterniond(), Quaterniond::unit_i());
  const DualQuaterniond g2(Quaterniond(), Quaterniond::unit_j());
  CHECK(code_of([&] { P7Line(g1, g2); }) == ErrorCode::degenerate_line);
  CHECK_NOTHROW(P7Line(a, g1));

  const P7Line line(a, gen.in_f());
  CHECK(projectively_equal(DualQuaterniond(line.point_at(1.0)), normalize(a)));
  CHECK(projectively_equal(motion_at(line, 0.0), line.b()));
  CHECK(std::abs(qnorm2(motion_at(line, 0.3).e()) - 1.0) < 1e-12);
}

TEST_CASE("generator space punctures") {
  const DualQuaterniond a(Quaterniond::identity(), Quaterniond(0, 1, 0, 0));
  const DualQuaterniond b(Quaterniond(-3, 0, 0, 0), Quaterniond(0, 0, 2, 0));
  const P7Line line(a, b);
  const auto s = line.generator_puncture();
  REQUIRE(s.has_value());
  CHECK(*s == doctest::Approx(0.75));
  CHECK(code_of([&] { motion_at(line, *s); }) == ErrorCode::on_generator_space);

  testing::Gen gen(32);
  CHECK_FALSE(P7Line(gen.in_f(), gen.in_f()).generator_puncture().has_value());
}

TEST_CASE("translation lines") {
  testing::Gen gen(33);
  for (int k = 0; k < 50; ++k) {
    const auto e = gen.unit_quat();
    const Eigen::Vector4d c1 = gen.vec4();
    const Eigen::Vector4d c2 = gen.vec4();
    const P7Line line(from_rotation_translation(e, c1), 2.5 * from_rotation_translation(e, c2));
    const auto cls = classify_line(line);
    REQUIRE(std::holds_alternative<TranslationMotion>(cls));
    const Eigen::Vector4d dir = std::get<TranslationMotion>(cls).direction;
    CHECK(std::abs(std::abs(dir.dot((c1 - c2).normalized())) - 1.0) < 1e-10);
    const auto traj = sample_trajectory(line, gen.vec4(), grid(9, -1.0, 2.0));
    CHECK(is_circular(traj).verdict == CircleVerdict::line_segment);
  }
}

TEST_CASE("lines through equal-height conjugate poses rotate in a fixed plane") {
  testing::Gen gen(34);
  for (int k = 0; k < 50; ++k) {
    // (1; 0) and a pure rotation (E; 0) are conjugate on the quadric, and
    // right multiplication by `base` keeps them so. Lifting both poses to the
    // same height h keeps the x0 shift constant along the line.
    const DualQuaterniond rot(gen.unit_quat(), Quaterniond());
    const auto base = gen.on_quadric();
    const double h = gen.uniform(-3.0, 3.0);
    const auto a2 = with_height(base, h);
    const auto b2 = with_height(rot * base, h);
    const P7Line line(a2, b2);
    const auto cls = classify_line(line);
    REQUIRE(std::holds_alternative<PlaneRotationMotion>(cls));
    CHECK(std::get<PlaneRotationMotion>(cls).height == doctest::Approx(h).epsilon(1e-9));
    for (double s : grid(7, -0.5, 1.5)) {
      CHECK(x0_shift(motion_at(line, s)) == doctest::Approx(h).epsilon(1e-9));
    }
  }
}

TEST_CASE("canonical Darboux line recovers its parameters") {
  testing::Gen gen(35);
  for (int k = 0; k < 50; ++k) {
    const double c = gen.uniform(0.1, 5.0);
    const double rho = gen.uniform(-3.1, 3.1);
    const auto cls = classify_line(canonical_darboux_line(c, rho));
    REQUIRE(std::holds_alternative<CircularDarbouxMotion>(cls));
    const auto& d = std::get<CircularDarbouxMotion>(cls);
    CHECK(d.c == doctest::Approx(c).epsilon(1e-9));
    CHECK(std::remainder(d.rho - rho, 2.0 * std::numbers::pi) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(describe(cls).rfind("circular-darboux c=", 0) == 0);
  }
}

TEST_CASE("canonical line poses are the circular Darboux poses") {
  // s = 1 / (1 + tan(tau / 2)) maps the line onto the rotation angle tau.
  const double c = 1.3;
  const double rho = 0.4;
  const auto line = canonical_darboux_line(c, rho);
  for (double tau : grid(9, -2.5, 2.5)) {
    const double s = 1.0 / (1.0 + std::tan(0.5 * tau));
    CHECK(testing::projective_distance(motion_at(line, s), circular_darboux_pose(c, rho, tau)) < 1e-12);
  }
}

TEST_CASE("generic lines give circular trajectories") {
  testing::Gen gen(36);
  int circles = 0;
  for (int k = 0; k < 100; ++k) {
    const P7Line line(gen.in_f(), gen.in_f());
    if (line.generator_puncture()) continue;
    const auto cls = classify_line(line);
    CHECK(std::holds_alternative<CircularDarbouxMotion>(cls));
    for (int j = 0; j < 3; ++j) {
      const auto traj = sample_trajectory(line, gen.vec4(), grid(11, -1.0, 2.0));
      const auto cert = is_circular(traj);
      CHECK(cert.verdict == CircleVerdict::circle);
      circles += cert.accepted();
    }
  }
  CHECK(circles > 250);
}

TEST_CASE("circular Darboux trajectory radius") {
  // Points of the x0x1-plane run on circles of radius c about a fixed centre;
  // points off it add their distance r to the rotation plane in quadrature.
  const double c = 0.8;
  const double rho = -1.1;
  Trajectory traj;
  const Eigen::Vector4d p(0.0, 0.0, 0.6, 0.0);
  for (double tau : grid(25, -3.0, 3.0)) {
    traj.params.push_back(tau);
    traj.points.push_back(act_x4(circular_darboux_pose(c, rho, tau), p));
  }
  const auto cert = is_circular(traj);
  REQUIRE(cert.accepted());
  CHECK(cert.radius == doctest::Approx(std::hypot(c, 0.6)).epsilon(1e-10));
}

TEST_CASE("circular translation") {
  const double c = 2.0;
  for (double tau : grid(7, -3.0, 3.0)) {
    const Eigen::Vector4d v = circular_translation(c, 0.7, tau);
    CHECK(v.norm() == doctest::Approx(2.0 * c * std::abs(std::sin(0.5 * tau))).epsilon(1e-12));
    CHECK(v.tail<2>().isZero());
  }
}

TEST_CASE("Karger Type-1 motion") {
  KargerParams kp{1.0, 2.0, 0.5, 0.0};
  CHECK(karger_translation(kp).isZero());
  CHECK_THROWS_AS((KargerParams{-1.0, 2.0, 0.0, 0.0}.validate()), Error);
  CHECK_THROWS_AS((KargerParams{1.0, 0.5, 0.0, 0.0}.validate()), Error);

  // The rotation part is an isometry of the x2x3-plane.
  testing::Gen gen(37);
  for (int k = 0; k < 20; ++k) {
    kp.tau = gen.uniform(-3.0, 3.0);
    const Eigen::Vector4d p = gen.vec4();
    const Eigen::Vector4d q = gen.vec4();
    CHECK((karger_type1(kp, p) - karger_type1(kp, q)).norm() == doctest::Approx((p - q).norm()));
  }

  SUBCASE("nonzero nu gives non-circular trajectories") {
    for (double nu : {0.1, 0.5, 1.0}) {
      KargerParams k2{1.0, 2.0, nu, 0.0};
      Trajectory traj;
      for (double tau : grid(33, -3.0, 3.0)) {
        k2.tau = tau;
        traj.params.push_back(tau);
        traj.points.push_back(karger_type1(k2, Eigen::Vector4d::Zero()));
      }
      CHECK_FALSE(is_circular(traj).accepted());
      k2.tau = 0.0;
      CHECK_FALSE(absolute_sphere_test(rational_trajectory(k2, Eigen::Vector4d::Zero())).on_absolute);
    }
  }
}

TEST_CASE("rational trajectories reproduce the sampled ones") {
  testing::Gen gen(38);
  for (int k = 0; k < 30; ++k) {
    const P7Line line(gen.in_f(), gen.in_f());
    const Eigen::Vector4d p = gen.vec4();
    const auto r = rational_trajectory(line, p);
    for (double s : {-0.7, 0.2, 0.9, 1.6}) {
      CHECK((eval(r, s) - act_x4(motion_at(line, s), p)).norm() < 1e-9);
    }
    CHECK(absolute_sphere_test(r).on_absolute);
  }
  KargerParams kp{0.7, 3.0, 0.4, 0.0};
  const Eigen::Vector4d p(0.1, 0.2, 0.3, 0.4);
  const auto r = rational_trajectory(kp, p);
  for (double tau : {-2.0, 0.5, 1.9}) {
    kp.tau = tau;
    CHECK((eval(r, std::tan(0.5 * tau)) - karger_type1(kp, p)).norm() < 1e-12);
  }
}

TEST_CASE("concyclicity test verdicts") {
  Trajectory fixed;
  Trajectory segment;
  Trajectory circle;
  Trajectory parabola;
  for (double s : grid(12, -1.0, 1.0)) {
    fixed.points.emplace_back(1.0, 2.0, 3.0, 4.0);
    segment.points.emplace_back(s, 2.0 * s, 0.0, 1.0);
    circle.points.emplace_back(1.0, 3.0 * std::cos(s), 3.0 * std::sin(s), 2.0);
    parabola.points.emplace_back(s, s * s, 0.0, 0.0);
  }
  CHECK(is_circular(fixed).verdict == CircleVerdict::fixed_point);
  CHECK(is_circular(segment).verdict == CircleVerdict::line_segment);
  const auto cert = is_circular(circle);
  CHECK(cert.verdict == CircleVerdict::circle);
  CHECK(cert.radius == doctest::Approx(3.0));
  CHECK((cert.center - Eigen::Vector4d(1.0, 0.0, 0.0, 2.0)).norm() < 1e-12);
  CHECK(is_circular(parabola).verdict == CircleVerdict::not_circular);

  Trajectory few;
  few.points.assign(4, Eigen::Vector4d::Zero());
  CHECK(code_of([&] { is_circular(few); }) == ErrorCode::bad_input);
}
