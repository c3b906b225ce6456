#include <cmath>
#include <numbers>

#include "doctest.h"
#include "studykin/kinematics.hpp"
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

}  // namespace

TEST_CASE("SE(3) action matches the homogeneous matrix oracle") {
  testing::Gen gen(21);
  for (int k = 0; k < 200; ++k) {
    const auto e = gen.unit_quat();
    const Eigen::Vector3d c = gen.vec3(3.0);
    const auto x = from_rotation_translation(e, Eigen::Vector4d(0.0, c.x(), c.y(), c.z()));
    const Eigen::Matrix4d m = testing::homogeneous_oracle(e, c);
    const double scale = gen.uniform(0.1, 10.0);
    for (int j = 0; j < 5; ++j) {
      const Eigen::Vector3d p = gen.vec3(2.0);
      const Eigen::Vector3d ref = (m * p.homogeneous()).head<3>();
      CHECK((act_se3(x, p) - ref).norm() < 1e-12);
      CHECK((act_se3(scale * x, p) - ref).norm() < 1e-12);
    }
  }
}

TEST_CASE("SE(3) action rejects G and off-quadric inputs") {
  const DualQuaterniond g(Quaterniond(), Quaterniond::unit_i());
  const DualQuaterniond off(Quaterniond::identity(), Quaterniond(0.5, 0, 0, 0));
  const Eigen::Vector3d p(1, 2, 3);
  CHECK(code_of([&] { act_se3(g, p); }) == ErrorCode::on_generator_space);
  CHECK(code_of([&] { act_se3(off, p); }) == ErrorCode::off_quadric);
}

TEST_CASE("X4 action of a rotation-translation pair") {
  testing::Gen gen(22);
  for (int k = 0; k < 100; ++k) {
    const auto e = gen.unit_quat();
    const Eigen::Vector4d c = gen.vec4(2.0);
    const auto x = from_rotation_translation(e, c);
    const Eigen::Vector4d p = gen.vec4();
    const Eigen::Vector4d rotated = unembed4(e * embed4(p) * qconj(e));
    CHECK((act_x4(x, p) - (rotated + c)).norm() < 1e-12);
    CHECK((translation4(x) - c).norm() < 1e-12);
    // The rotation part never moves the x0 coordinate.
    CHECK(rotated[0] == doctest::Approx(p[0]).epsilon(1e-12));
    CHECK(x0_shift(x) == doctest::Approx(c[0]).epsilon(1e-12));
  }
  CHECK(code_of([] {
          act_x4(DualQuaterniond(Quaterniond(), Quaterniond::unit_i()), Eigen::Vector4d::Zero().eval());
        }) == ErrorCode::on_generator_space);
}

TEST_CASE("x0 shift vanishes exactly on the quadric") {
  testing::Gen gen(23);
  for (int k = 0; k < 100; ++k) {
    CHECK(std::abs(x0_shift(gen.on_quadric())) < 1e-12);
    const auto x = gen.in_f();
    const Eigen::Vector4d p = gen.vec4();
    CHECK(act_x4(x, p)[0] - p[0] == doctest::Approx(x0_shift(x)).epsilon(1e-10));
  }
}

TEST_CASE("psh projects onto the quadric") {
  testing::Gen gen(24);
  for (int k = 0; k < 200; ++k) {
    const auto x = gen.in_f();
    const auto y = normalize(psh(x));
    CHECK(std::abs(study_bilinear(y, y)) < 1e-12);
    CHECK(projectively_equal(psh(y), y, 1e-12));
    CHECK(projectively_equal(psh(3.0 * x), y, 1e-12));
    const auto m = gen.on_quadric();
    CHECK(projectively_equal(psh(m), m, 1e-12));
  }
  CHECK(code_of([] { psh(DualQuaterniond(Quaterniond(), Quaterniond::unit_i())); }) ==
        ErrorCode::on_generator_space);
}

TEST_CASE("psh keeps the SE(3) part of an X4 displacement") {
  // act_x4 splits into the x0 shift and the SE(3) action of psh(x) on the
  // remaining coordinates.
  testing::Gen gen(25);
  for (int k = 0; k < 100; ++k) {
    const auto x = gen.unit_e_x4();
    const Eigen::Vector4d p = gen.vec4();
    const Eigen::Vector4d image = act_x4(x, p);
    CHECK(image[0] == doctest::Approx(p[0] + x0_shift(x)).epsilon(1e-10));
    CHECK((image.tail<3>() - act_se3(psh(x), Eigen::Vector3d(p.tail<3>()))).norm() < 1e-10);
  }
}

TEST_CASE("rotation plane angle against Eigen's angle-axis") {
  testing::Gen gen(26);
  for (int k = 0; k < 200; ++k) {
    const auto e = gen.quat(gen.uniform(0.1, 3.0));
    const auto plane = rotation_plane_angle(e);
    REQUIRE(plane.has_value());
    const Eigen::AngleAxisd aa(testing::rotation_oracle(e));
    // The quaternion angle lives in [0, 2 pi); the matrix only sees it mod 2 pi
    // folded into [0, pi].
    const double folded = plane->angle > std::numbers::pi ? 2.0 * std::numbers::pi - plane->angle
                                                          : plane->angle;
    CHECK(folded == doctest::Approx(aa.angle()).epsilon(1e-10));
    CHECK(plane->dir_e.norm() == doctest::Approx(1.0));
    const Eigen::Vector3d axis = plane->dir_e.tail<3>().normalized();
    CHECK(std::abs(std::abs(axis.dot(aa.axis())) - 1.0) < 1e-10);
  }
  CHECK_FALSE(rotation_plane_angle(Quaterniond::identity()).has_value());
  CHECK_FALSE(rotation_plane_angle(Quaterniond(-2, 0, 0, 0)).has_value());
  CHECK(rotation_plane_angle(Quaterniond::unit_i())->angle == doctest::Approx(std::numbers::pi));
}

TEST_CASE("Grassmann coordinates of the rotation plane") {
  SUBCASE("half turn about the x axis through (0, 0, 1)") {
    const DualQuaterniond x(Quaterniond::unit_i(), Quaterniond::unit_j());
    const auto g = gamma_plane(x);
    CHECK(g.lbar.coeffs().isApprox(Eigen::Vector4d(0, 1, 0, 0)));
    CHECK(g.lhat.coeffs().isZero());
    CHECK(g.moment.coeffs().isApprox(Eigen::Vector4d(0, 0, -1, 0)));
  }
  SUBCASE("pure translations have no rotation plane") {
    const auto x = from_rotation_translation(Quaterniond::identity(), Eigen::Vector4d(0, 1, 2, 3));
    CHECK(code_of([&] { gamma_plane(x); }) == ErrorCode::bad_input);
  }
  SUBCASE("moment is orthogonal to lbar") {
    testing::Gen gen(27);
    for (int k = 0; k < 50; ++k) {
      const auto g = gamma_plane(gen.on_quadric());
      CHECK(std::abs(g.lbar.vec().dot(g.moment.vec())) < 1e-10);
    }
  }
}

TEST_CASE("axis from the rotation plane agrees with the classical screw axis") {
  testing::Gen gen(28);
  for (int k = 0; k < 200; ++k) {
    const auto e = gen.unit_quat();
    const Eigen::Vector3d c = gen.vec3(3.0);
    const auto x = from_rotation_translation(e, Eigen::Vector4d(0.0, c.x(), c.y(), c.z()));
    const auto oracle = testing::axis_oracle(testing::homogeneous_oracle(e, c));
    const auto axis = axis_in_hyperplane(x, gen.uniform(-4.0, 4.0));
    CHECK(std::abs(std::abs(axis.direction.dot(oracle.direction)) - 1.0) < 1e-10);
    CHECK(testing::point_line_distance(axis.point, oracle.point, oracle.direction) < 1e-8);
  }
}

TEST_CASE("height-labelled projection") {
  testing::Gen gen(29);
  for (int k = 0; k < 100; ++k) {
    const auto x = gen.in_f();
    const auto proj = kotierte_projection(x);
    CHECK(proj.height == doctest::Approx(x0_shift(x)));
    const double h = gen.uniform(-5.0, 5.0);
    const auto lifted = with_height(x, h);
    CHECK(x0_shift(lifted) == doctest::Approx(h).epsilon(1e-10));
    CHECK(projectively_equal(psh(lifted), proj.pose, 1e-12));
  }
}

TEST_CASE("SE(3) motion type") {
  const auto id = DualQuaterniond();
  CHECK(se3_motion_type(id).kind == Se3Kind::identity);

  const auto tr = from_rotation_translation(Quaterniond::identity(), Eigen::Vector4d(0, 3, 4, 0));
  const auto tt = se3_motion_type(tr);
  CHECK(tt.kind == Se3Kind::translation);
  CHECK(tt.slide == doctest::Approx(5.0));

  const DualQuaterniond rot(Quaterniond::unit_i(), Quaterniond::unit_j());
  const auto rt = se3_motion_type(rot);
  CHECK(rt.kind == Se3Kind::rotation);
  CHECK(rt.angle == doctest::Approx(std::numbers::pi));

  const auto screw = from_rotation_translation(Quaterniond(std::cos(0.3), std::sin(0.3), 0, 0),
                                               Eigen::Vector4d(0, 2, 0, 0));
  const auto st = se3_motion_type(screw);
  CHECK(st.kind == Se3Kind::screw);
  CHECK(st.slide == doctest::Approx(2.0));
  CHECK(st.angle == doctest::Approx(0.6));
}

TEST_CASE("single precision actions") {
  const auto x = from_rotation_translation(Quaternion<float>(1.f, 0.f, 0.f, 0.f),
                                           Vector4<float>(1.f, 2.f, 3.f, 4.f));
  const Vector4<float> p = act_x4(x, Vector4<float>::Zero().eval());
  CHECK(p[3] == doctest::Approx(4.0f));
}
