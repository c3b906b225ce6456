#include "studykin/complexes.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <random>

namespace studykin {

namespace {

double unit_norm(const std::array<double, 6>& v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

}  // namespace

double pluecker_form(const PlueckerLine& line) {
  const auto& l = line.l;
  return l[0] * l[3] + l[1] * l[4] + l[2] * l[5];
}

double screw_polar_form(const ScrewCoords& screw, const PlueckerLine& line) {
  const auto& s = screw.s;
  const auto& l = line.l;
  return s[0] * l[3] + s[1] * l[4] + s[2] * l[5] + s[3] * l[0] + s[4] * l[1] + s[5] * l[2];
}

bool on_pluecker_quadric(const PlueckerLine& line, double tol) {
  const double n = unit_norm(line.l);
  if (n == 0.0) throw Error(ErrorCode::bad_input, "zero Pluecker 6-tuple");
  return std::abs(pluecker_form(line)) / (n * n) <= tol;
}

bool screw_complex_contains(const ScrewCoords& screw, const PlueckerLine& line, double tol) {
  const double ns = unit_norm(screw.s);
  const double nl = unit_norm(line.l);
  if (ns == 0.0) throw Error(ErrorCode::bad_input, "the zero screw is excluded");
  if (nl == 0.0) throw Error(ErrorCode::bad_input, "zero Pluecker 6-tuple");
  return std::abs(screw_polar_form(screw, line)) / (ns * nl) <= tol;
}

DisplacementComplex::DisplacementComplex(const DualQuaterniond& pole, double tol) : pole_(pole) {
  if (!in_f(pole, tol)) {
    throw Error(ErrorCode::on_generator_space, "the pole of a displacement complex must not lie in G");
  }
}

bool complex_contains(const DisplacementComplex& cx, const DualQuaterniond& m, double tol) {
  if (!in_f(m, tol)) {
    throw Error(ErrorCode::on_generator_space, "complex member must not lie in G");
  }
  const auto mn = normalize(m);
  if (std::abs(study_bilinear(mn, mn)) > tol) {
    throw Error(ErrorCode::off_quadric, "complex member must satisfy the Study condition");
  }
  return std::abs(study_bilinear(normalize(cx.pole()), mn)) <= tol;
}

DualQuaterniond relative_motion(const DualQuaterniond& pole, const DualQuaterniond& m) {
  const auto& e = pole.e();
  const auto& t = pole.t();
  const auto& f = m.e();
  const auto& u = m.t();
  return {e * qconj(f), e * qconj(u) + t * qconj(f)};
}

DualQuaterniond complex_axis(const DisplacementComplex& cx) { return psh(cx.pole()); }

bool is_orthogonal_x4(const DualQuaterniond& x, double tol) {
  if (!in_f(x, tol)) {
    throw Error(ErrorCode::on_generator_space, "is_orthogonal_x4: E = 0");
  }
  return std::abs(normalize(x).t().q0()) <= tol;
}

std::vector<DualQuaterniond> sample_complex_members(const DisplacementComplex& cx, int n,
                                                    std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::bad_input, "sample_complex_members needs n >= 1");
  const auto pole = normalize(cx.pole());
  const Eigen::Vector4d e = pole.e().coeffs();
  const Eigen::Vector4d t = pole.t().coeffs();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto gaussian4 = [&] {
    Eigen::Vector4d v;
    for (int i = 0; i < 4; ++i) v[i] = gauss(rng);
    return v;
  };

  // For a fixed rotation part F both conditions are linear in U:
  //   F.U = 0 (Study quadric) and E.U = -F.T (polar hyperplane).
  std::vector<DualQuaterniond> members;
  members.reserve(n);
  while (static_cast<int>(members.size()) < n) {
    const Eigen::Vector4d f = gaussian4().normalized();
    const Eigen::Vector4d e_perp = e - e.dot(f) * f;
    if (e_perp.norm() < 1e-3) continue;  // F nearly parallel to E
    const Eigen::Vector4d g = e_perp.normalized();

    // U = alpha g + null-space part; g is orthogonal to F, so F.U = 0 holds.
    const double alpha = -f.dot(t) / e.dot(g);
    Eigen::Matrix<double, 2, 4> constraints;
    constraints.row(0) = f.transpose();
    constraints.row(1) = g.transpose();
    const Eigen::JacobiSVD<Eigen::Matrix<double, 2, 4>> svd(constraints, Eigen::ComputeFullV);
    const Eigen::Matrix<double, 4, 2> null_space = svd.matrixV().rightCols<2>();
    const Eigen::Vector4d u =
        alpha * g + gauss(rng) * null_space.col(0) + gauss(rng) * null_space.col(1);
    members.emplace_back(Quaterniond(f), Quaterniond(u));
  }
  return members;
}

}  // namespace studykin
