#pragma once

#include <vector>

#include "studykin/dual_quaternion.hpp"
#include "studykin/kinematics.hpp"

namespace studykin {

/// Control structure of a rational Bezier curve in P^7.
///
/// Weights follow from the Farin parameters as w0 = 1 and
/// w_{i+1} = w_i f_i / (1 - f_i). The first and last control poses must lie on
/// the Study quadric, so the designed motion starts and ends at height 0.
class ControlStructure {
 public:
  ControlStructure(std::vector<DualQuaterniond> ctrl, std::vector<double> farin,
                   double tol = kDefaultTol);

  const std::vector<DualQuaterniond>& ctrl() const { return ctrl_; }
  const std::vector<double>& farin() const { return farin_; }
  int degree() const { return static_cast<int>(ctrl_.size()) - 1; }
  std::vector<double> weights() const;

 private:
  std::vector<DualQuaterniond> ctrl_;
  std::vector<double> farin_;
};

/// Projective de Casteljau evaluation. Throws on_generator_space if the curve
/// point lies in G.
DualQuaterniond decasteljau_eval(const ControlStructure& cs, double t, double tol = kDefaultTol);

struct FarinPose {
  DualQuaterniond pose;
  double height;
};

/// Farin point of segment i, (1 - f_i) ctrl[i] + f_i ctrl[i+1], which is
/// projectively w_i ctrl[i] + w_{i+1} ctrl[i+1].
FarinPose farin_pose(const ControlStructure& cs, int segment);

/// Recovers f from a point on the line through ctrl[i] and ctrl[i+1].
double farin_parameter_of(const ControlStructure& cs, int segment, const DualQuaterniond& point);

struct CurveSample {
  double t;
  DualQuaterniond pose;  // projected SE(3) pose, canonical representative
  double height;
};

/// Height-labelled top view of the designed motion on a uniform t-grid.
std::vector<CurveSample> motion_curve(const ControlStructure& cs, int samples);

/// max over t of |x0_shift|, taken on the grid and refined by golden-section
/// search around the grid maximum.
double max_x0_excursion(const ControlStructure& cs, int grid = 257);

// =============================================================================
// Height optimization
// =============================================================================

/// Free parameters: Farin parameters per segment and heights per control pose.
/// Heights of the first and last control pose are never free.
struct ParameterMask {
  std::vector<bool> farin;
  std::vector<bool> height;
};

struct DesignObjective {
  int grid = 257;
  double tol = 1e-12;
  int max_cycles = 200;
};

struct OptimizationResult {
  ControlStructure cs;
  std::vector<double> trace;  // objective after every coordinate step
  double initial;
  double final;
};

/// Derivative-free cyclic coordinate search with golden-section line searches.
/// Only improving steps are accepted, so the trace is non-increasing.
OptimizationResult optimize_heights(const ControlStructure& cs, const ParameterMask& mask,
                                    const DesignObjective& obj = {});

/// Control structure with the given control pose moved to a new height; the
/// projected SE(3) pose is unchanged.
ControlStructure with_control_height(const ControlStructure& cs, int index, double height);

/// Control structure with one Farin parameter replaced.
ControlStructure with_farin(const ControlStructure& cs, int segment, double f);

// =============================================================================
// Demo scenes
// =============================================================================

/// Quadratic scene with on-quadric start/end poses and an interior control
/// pose at height -28/9.
ControlStructure demo_scene_quadratic();

/// Quadratic planar scene whose start, Farin, control, Farin and end poses
/// carry the heights 0, 3/4, 1, 3/4, 0.
ControlStructure demo_scene_planar_analogue();

}  // namespace studykin
