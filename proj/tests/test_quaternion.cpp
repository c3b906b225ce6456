#include <cmath>
#include <limits>

#include "doctest.h"
#include "studykin/dual_quaternion.hpp"
#include "test_support.hpp"

using namespace studykin;

namespace {

Eigen::Quaterniond to_eigen(const Quaterniond& q) { return {q.q0(), q.q1(), q.q2(), q.q3()}; }

}  // namespace

TEST_CASE("Hamilton product agrees with Eigen's quaternion product") {
  testing::Gen gen(11);
  for (int k = 0; k < 200; ++k) {
    const auto a = gen.quat();
    const auto b = gen.quat();
    const Eigen::Quaterniond ref = to_eigen(a) * to_eigen(b);
    const auto ab = qmul(a, b);
    CHECK(ab.q0() == doctest::Approx(ref.w()).epsilon(1e-12));
    CHECK(ab.q1() == doctest::Approx(ref.x()).epsilon(1e-12));
    CHECK(ab.q2() == doctest::Approx(ref.y()).epsilon(1e-12));
    CHECK(ab.q3() == doctest::Approx(ref.z()).epsilon(1e-12));
  }
}

TEST_CASE("unit relations i^2 = j^2 = k^2 = ijk = -1") {
  const auto i = Quaterniond::unit_i();
  const auto j = Quaterniond::unit_j();
  const auto k = Quaterniond::unit_k();
  const auto minus_one = -Quaterniond::identity();
  CHECK(i * i == minus_one);
  CHECK(j * j == minus_one);
  CHECK(k * k == minus_one);
  CHECK(i * j * k == minus_one);
  CHECK(i * j == k);
  CHECK(j * i == -k);
}

TEST_CASE("conjugate and norm") {
  testing::Gen gen(12);
  for (int k = 0; k < 100; ++k) {
    const auto a = gen.quat();
    const auto b = gen.quat();
    CHECK(qnorm2(a * b) == doctest::Approx(qnorm2(a) * qnorm2(b)).epsilon(1e-12));
    CHECK(((a * qconj(a)) - qnorm2(a) * Quaterniond::identity()).coeffs().norm() < 1e-12);
    CHECK((qconj(a * b) - qconj(b) * qconj(a)).coeffs().norm() < 1e-12);
    CHECK(qdot(a, b) == doctest::Approx(a.coeffs().dot(b.coeffs())));
    CHECK(qscalar(a) + qpure(a).coeffs().sum() == doctest::Approx(a.coeffs().sum()));
  }
}

TEST_CASE("embedding of points round-trips") {
  const Eigen::Vector3d p(1.5, -2.0, 0.25);
  const Eigen::Vector4d q(-1.0, 2.0, 3.0, 4.0);
  CHECK(embed3(p).q0() == 0.0);
  CHECK(unembed3(embed3(p)) == p);
  CHECK(unembed4(embed4(q)) == q);
}

TEST_CASE("dual quaternion construction rejects zero and non-finite tuples") {
  try {
    DualQuaterniond(Quaterniond(), Quaterniond());
    FAIL("zero tuple accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::bad_input);
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(DualQuaterniond(Quaterniond(nan, 0, 0, 0), Quaterniond()), Error);
  CHECK_NOTHROW(DualQuaterniond(Quaterniond(), Quaterniond::unit_i()));
}

TEST_CASE("Study form") {
  testing::Gen gen(13);
  for (int k = 0; k < 100; ++k) {
    const auto x = gen.in_f();
    const auto y = gen.in_f();
    CHECK(study_bilinear(x, y) == doctest::Approx(study_bilinear(y, x)));
    CHECK(study_bilinear(x, x) == doctest::Approx(2.0 * qdot(x.e(), x.t())));
    const auto m = gen.on_quadric();
    CHECK(std::abs(study_bilinear(m, m)) < 1e-12);
  }
}

TEST_CASE("normalize picks the canonical representative") {
  testing::Gen gen(14);
  for (int k = 0; k < 100; ++k) {
    const auto x = gen.in_f();
    const double s = gen.uniform(-5.0, 5.0);
    const auto n = normalize(x);
    CHECK(qnorm2(n.e()) == doctest::Approx(1.0));
    CHECK(n.e().q0() > 0.0);
    CHECK((normalize(s * x).coords() - n.coords()).norm() < 1e-12);
  }
  SUBCASE("leading zero coordinates are skipped by the sign rule") {
    const DualQuaterniond x(Quaterniond(0, -2, 1, 0), Quaterniond(1, 1, 1, 1));
    CHECK(normalize(x).e().q1() > 0.0);
  }
  SUBCASE("points of G are scaled by |T|") {
    const DualQuaterniond g(Quaterniond(), Quaterniond(0, 0, -3, 4));
    const auto n = normalize(g);
    CHECK(qnorm2(n.t()) == doctest::Approx(1.0));
    CHECK(n.t().q2() > 0.0);
  }
}

TEST_CASE("membership predicates") {
  testing::Gen gen(15);
  const auto m = gen.on_quadric();
  CHECK(in_f(m));
  CHECK(in_e(m));
  const DualQuaterniond off(Quaterniond::identity(), Quaterniond(1, 0, 0, 0));
  CHECK(in_f(off));
  CHECK_FALSE(in_e(off));
  const DualQuaterniond g(Quaterniond(), Quaterniond::unit_j());
  CHECK_FALSE(in_f(g));
  CHECK_FALSE(in_e(g));
}

TEST_CASE("dual quaternion product is associative and preserves the quadric") {
  testing::Gen gen(16);
  for (int k = 0; k < 100; ++k) {
    const auto a = gen.in_f();
    const auto b = gen.in_f();
    const auto c = gen.in_f();
    CHECK(((a * b) * c).coords().isApprox((a * (b * c)).coords(), 1e-12));
    const auto p = gen.on_quadric();
    const auto q = gen.on_quadric();
    const auto pq = normalize(p * q);
    CHECK(std::abs(study_bilinear(pq, pq)) < 1e-12);
  }
}

TEST_CASE("inverse") {
  testing::Gen gen(17);
  for (int k = 0; k < 100; ++k) {
    const auto x = gen.in_f();
    CHECK(projectively_equal(x * inverse(x), DualQuaterniond(), 1e-12));
    CHECK(projectively_equal(inverse(x) * x, DualQuaterniond(), 1e-12));
  }
  try {
    inverse(DualQuaterniond(Quaterniond(), Quaterniond::unit_k()));
    FAIL("inverse of a point of G");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::on_generator_space);
  }
}

TEST_CASE("projective equality") {
  testing::Gen gen(18);
  const auto x = gen.in_f();
  CHECK(projectively_equal(x, -3.5 * x));
  CHECK(projectively_equal(x, 1e-6 * x));
  CHECK_FALSE(projectively_equal(x, gen.in_f()));
}

TEST_CASE("single precision instantiation") {
  const Quaternion<float> a(1.f, 2.f, 3.f, 4.f);
  const DualQuaternion<float> x(a, Quaternion<float>(0.f, 1.f, 0.f, 0.f));
  const auto n = normalize(x);
  CHECK(qnorm2(n.e()) == doctest::Approx(1.0f).epsilon(1e-6));
  const DualQuaterniond xd = x.cast<double>();
  CHECK(xd.e().q3() == 4.0);
}
