#include "studykin/design.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace studykin {

namespace {

constexpr double kInvPhi = 0.6180339887498948482;

// Golden-section search for the minimum of a unimodal function on [lo, hi].
template <typename F>
std::pair<double, double> golden_min(F&& f, double lo, double hi, double x_tol) {
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int iter = 0; iter < 200 && (b - a) > x_tol; ++iter) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? std::pair{c, fc} : std::pair{d, fd};
}

double abs_height(const ControlStructure& cs, double t) {
  return std::abs(x0_shift(decasteljau_eval(cs, t)));
}

// Smallest root of a f^2 + b f + c in the open interval (0, 1).
double root_in_unit_interval(double a, double b, double c) {
  std::vector<double> roots;
  if (std::abs(a) < 1e-14) {
    roots.push_back(-c / b);
  } else {
    const double disc = std::sqrt(b * b - 4.0 * a * c);
    roots.push_back((-b + disc) / (2.0 * a));
    roots.push_back((-b - disc) / (2.0 * a));
  }
  for (double r : roots) {
    if (r > 0.0 && r < 1.0) return r;
  }
  throw Error(ErrorCode::bad_input, "no Farin parameter in (0, 1) reaches the requested height");
}

// Farin parameter on the segment ctrl[i] -> ctrl[i+1] whose pose has the given height.
double farin_for_height(const DualQuaterniond& p, const DualQuaterniond& q, double height) {
  // height(f) = -2 N(f) / D(f), N and D quadratic in f.
  const double pp = qdot(p.e(), p.t());
  const double pq = qdot(p.e(), q.t()) + qdot(q.e(), p.t());
  const double qq = qdot(q.e(), q.t());
  const double ep = qnorm2(p.e());
  const double eq = qnorm2(q.e());
  const double epq = 2.0 * qdot(p.e(), q.e());
  // N(f) = (1-f)^2 pp + f(1-f) pq + f^2 qq ; D(f) likewise with ep, epq, eq
  const auto coeffs = [](double c00, double c01, double c11) {
    return Eigen::Vector3d(c00, c01 - 2.0 * c00, c00 - c01 + c11);  // const, linear, quadratic
  };
  const Eigen::Vector3d n = coeffs(pp, pq, qq);
  const Eigen::Vector3d d = coeffs(ep, epq, eq);
  const Eigen::Vector3d g = -2.0 * n - height * d;
  return root_in_unit_interval(g[2], g[1], g[0]);
}

}  // namespace

// =============================================================================
// ControlStructure
// =============================================================================

ControlStructure::ControlStructure(std::vector<DualQuaterniond> ctrl, std::vector<double> farin,
                                   double tol)
    : ctrl_(std::move(ctrl)), farin_(std::move(farin)) {
  if (ctrl_.size() < 2) {
    throw Error(ErrorCode::bad_input, "a control structure needs at least two control poses");
  }
  if (farin_.size() + 1 != ctrl_.size()) {
    throw Error(ErrorCode::bad_input, "one Farin parameter per control polygon segment is required");
  }
  for (double f : farin_) {
    if (!(f > 0.0 && f < 1.0)) {
      throw Error(ErrorCode::bad_input, "Farin parameters must lie strictly inside (0, 1)");
    }
  }
  for (const auto& c : ctrl_) {
    if (!in_f(c, tol)) {
      throw Error(ErrorCode::on_generator_space, "control poses must not lie in G");
    }
  }
  for (const auto* end : {&ctrl_.front(), &ctrl_.back()}) {
    const auto n = normalize(*end);
    if (std::abs(study_bilinear(n, n)) > tol) {
      throw Error(ErrorCode::off_quadric, "start and end pose must lie on the Study quadric");
    }
  }
}

std::vector<double> ControlStructure::weights() const {
  std::vector<double> w(ctrl_.size());
  w[0] = 1.0;
  for (std::size_t i = 0; i < farin_.size(); ++i) w[i + 1] = w[i] * farin_[i] / (1.0 - farin_[i]);
  return w;
}

// =============================================================================
// Evaluation
// =============================================================================

DualQuaterniond decasteljau_eval(const ControlStructure& cs, double t, double tol) {
  const auto w = cs.weights();
  std::vector<Vector8<double>> pts;
  pts.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) pts.push_back(w[i] * cs.ctrl()[i].coords());
  for (std::size_t r = 1; r < pts.size(); ++r) {
    for (std::size_t i = 0; i + r < pts.size(); ++i) pts[i] = (1.0 - t) * pts[i] + t * pts[i + 1];
  }
  const Vector8<double>& v = pts.front();
  if (v.head<4>().norm() <= tol * v.norm()) {
    throw Error(ErrorCode::on_generator_space, "design curve passes through G");
  }
  return DualQuaterniond(v);
}

FarinPose farin_pose(const ControlStructure& cs, int segment) {
  if (segment < 0 || segment >= cs.degree()) {
    throw Error(ErrorCode::bad_input, "Farin segment index out of range");
  }
  const double f = cs.farin()[segment];
  const DualQuaterniond pose(Vector8<double>((1.0 - f) * cs.ctrl()[segment].coords() +
                                             f * cs.ctrl()[segment + 1].coords()));
  return {pose, x0_shift(pose)};
}

double farin_parameter_of(const ControlStructure& cs, int segment, const DualQuaterniond& point) {
  if (segment < 0 || segment >= cs.degree()) {
    throw Error(ErrorCode::bad_input, "Farin segment index out of range");
  }
  Eigen::Matrix<double, 8, 2> basis;
  basis.col(0) = cs.ctrl()[segment].coords();
  basis.col(1) = cs.ctrl()[segment + 1].coords();
  const Eigen::Vector2d ab = basis.colPivHouseholderQr().solve(point.coords());
  return ab[1] / (ab[0] + ab[1]);
}

std::vector<CurveSample> motion_curve(const ControlStructure& cs, int samples) {
  if (samples < 2) throw Error(ErrorCode::bad_input, "motion_curve needs at least two samples");
  std::vector<CurveSample> out;
  out.reserve(samples);
  for (int j = 0; j < samples; ++j) {
    const double t = double(j) / double(samples - 1);
    const auto projected = kotierte_projection(decasteljau_eval(cs, t));
    out.push_back({t, normalize(projected.pose), projected.height});
  }
  return out;
}

double max_x0_excursion(const ControlStructure& cs, int grid) {
  if (grid < 2) throw Error(ErrorCode::bad_input, "excursion grid needs at least two points");
  int best = 0;
  double best_value = -1.0;
  for (int j = 0; j < grid; ++j) {
    const double value = abs_height(cs, double(j) / double(grid - 1));
    if (value > best_value) {
      best_value = value;
      best = j;
    }
  }
  const double lo = double(std::max(best - 1, 0)) / double(grid - 1);
  const double hi = double(std::min(best + 1, grid - 1)) / double(grid - 1);
  const auto refined =
      golden_min([&](double t) { return -abs_height(cs, t); }, lo, hi, 1e-13);
  return std::max(best_value, -refined.second);
}

// =============================================================================
// Optimization
// =============================================================================

ControlStructure with_control_height(const ControlStructure& cs, int index, double height) {
  auto ctrl = cs.ctrl();
  ctrl.at(index) = with_height(ctrl.at(index), height);
  return ControlStructure(std::move(ctrl), cs.farin());
}

ControlStructure with_farin(const ControlStructure& cs, int segment, double f) {
  auto farin = cs.farin();
  farin.at(segment) = f;
  return ControlStructure(cs.ctrl(), std::move(farin));
}

OptimizationResult optimize_heights(const ControlStructure& cs, const ParameterMask& mask,
                                    const DesignObjective& obj) {
  if (obj.grid < 33) throw Error(ErrorCode::bad_input, "objective grid must have at least 33 points");
  const int n = cs.degree();
  if (!mask.farin.empty() && static_cast<int>(mask.farin.size()) != n) {
    throw Error(ErrorCode::bad_input, "Farin mask needs one entry per segment");
  }
  if (!mask.height.empty() && static_cast<int>(mask.height.size()) != n + 1) {
    throw Error(ErrorCode::bad_input, "height mask needs one entry per control pose");
  }
  if (!mask.height.empty() && (mask.height.front() || mask.height.back())) {
    throw Error(ErrorCode::bad_input, "start and end pose heights are fixed at 0");
  }

  // Coordinates: Farin parameters as log weight ratios, heights as-is.
  struct Coord {
    bool farin;
    int index;
  };
  std::vector<Coord> coords;
  std::vector<double> x;
  for (int i = 0; i < static_cast<int>(mask.farin.size()); ++i) {
    if (!mask.farin[i]) continue;
    const double f = cs.farin()[i];
    coords.push_back({true, i});
    x.push_back(std::log(f / (1.0 - f)));
  }
  for (int i = 0; i < static_cast<int>(mask.height.size()); ++i) {
    if (!mask.height[i]) continue;
    coords.push_back({false, i});
    x.push_back(x0_shift(cs.ctrl()[i]));
  }
  if (coords.empty()) throw Error(ErrorCode::bad_input, "no free parameter selected");

  const auto build = [&](const std::vector<double>& params) {
    auto ctrl = cs.ctrl();
    auto farin = cs.farin();
    for (std::size_t k = 0; k < coords.size(); ++k) {
      if (coords[k].farin) {
        farin[coords[k].index] = 1.0 / (1.0 + std::exp(-params[k]));
      } else {
        ctrl[coords[k].index] = with_height(ctrl[coords[k].index], params[k]);
      }
    }
    return ControlStructure(std::move(ctrl), std::move(farin));
  };
  const auto objective = [&](const std::vector<double>& params) {
    try {
      return max_x0_excursion(build(params), obj.grid);
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  const double initial = objective(x);
  OptimizationResult result{cs, {initial}, initial, initial};
  if (initial == 0.0) return result;

  std::vector<double> initial_step(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    initial_step[k] = coords[k].farin ? 1.0 : std::max(1.0, std::abs(x[k]));
  }
  std::vector<double> step = initial_step;
  constexpr double kMinStep = 1e-9;
  double current = initial;
  bool restarted = false;

  for (int cycle = 0; cycle < obj.max_cycles; ++cycle) {
    double gain = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      auto trial = x;
      const auto line = [&](double v) {
        trial[k] = v;
        return objective(trial);
      };
      const double x_tol = 1e-11 * std::max(1.0, std::abs(x[k]));
      const auto [v, fv] = golden_min(line, x[k] - step[k], x[k] + step[k], x_tol);
      if (fv < current) {
        const double moved = std::abs(v - x[k]);
        gain += current - fv;
        current = fv;
        x[k] = v;
        step[k] = moved > 0.9 * step[k] ? 2.0 * step[k] : std::max(4.0 * moved, kMinStep);
      } else {
        step[k] = std::max(0.5 * step[k], kMinStep);
      }
      result.trace.push_back(current);
    }
    if (gain < obj.tol) {
      if (restarted) break;
      restarted = true;
      step = initial_step;
    } else {
      restarted = false;
    }
  }

  if (current < initial) result.cs = build(x);
  result.final = current;
  return result;
}

// =============================================================================
// Demo scenes
// =============================================================================

ControlStructure demo_scene_quadratic() {
  // Dyadic coordinates keep e.t of the start and end pose exactly zero.
  const DualQuaterniond start(Quaterniond::identity(), Quaterniond());
  const DualQuaterniond end(Quaterniond(3.0, 0.0, 0.0, 4.0), Quaterniond(2.0, 0.5, 1.0, -1.5));
  const DualQuaterniond control = from_rotation_translation(
      Quaterniond(2.0, 0.5, 0.0, 1.0), Eigen::Vector4d(-28.0 / 9.0, 2.0, 3.0, 1.0));
  return ControlStructure({start, control, end}, {0.5, 0.5});
}

ControlStructure demo_scene_planar_analogue() {
  const DualQuaterniond start(Quaterniond::identity(), Quaterniond());
  const DualQuaterniond control =
      from_rotation_translation(Quaterniond(2.0, 0.0, 0.0, 1.0), Eigen::Vector4d(1.0, 2.0, 1.0, 0.0));
  const DualQuaterniond end =
      from_rotation_translation(Quaterniond(3.0, 0.0, 0.0, 4.0), Eigen::Vector4d(0.0, 4.0, 1.0, 0.0));
  const double f0 = farin_for_height(start, control, 0.75);
  const double f1 = farin_for_height(control, end, 0.75);
  return ControlStructure({start, control, end}, {f0, f1});
}

}  // namespace studykin
