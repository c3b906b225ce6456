#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "studykin/dual_quaternion.hpp"
#include "studykin/kinematics.hpp"

namespace studykin {

// =============================================================================
// Line and screw coordinates in P^5
// =============================================================================

/// Homogeneous Pluecker coordinates (l01 : l02 : l03 : l23 : l31 : l12).
struct PlueckerLine {
  std::array<double, 6> l{};
};

/// Homogeneous screw coordinates (s01 : s02 : s03 : s23 : s31 : s12).
struct ScrewCoords {
  std::array<double, 6> s{};
};

/// l01 l23 + l02 l31 + l03 l12.
double pluecker_form(const PlueckerLine& line);

/// s01 l23 + s02 l31 + s03 l12 + s23 l01 + s31 l02 + s12 l03.
double screw_polar_form(const ScrewCoords& screw, const PlueckerLine& line);

/// Tolerances apply to the forms evaluated on unit-norm 6-tuples.
bool on_pluecker_quadric(const PlueckerLine& line, double tol = kDefaultTol);
bool screw_complex_contains(const ScrewCoords& screw, const PlueckerLine& line,
                            double tol = kDefaultTol);

// =============================================================================
// Linear complexes of SE(3)-displacements
// =============================================================================

/// The on-quadric points in the polar hyperplane of `pole` w.r.t. the Study
/// quadric.
class DisplacementComplex {
 public:
  explicit DisplacementComplex(const DualQuaterniond& pole, double tol = kDefaultTol);
  const DualQuaterniond& pole() const { return pole_; }

 private:
  DualQuaterniond pole_;
};

/// Membership of an SE(3) displacement. Throws off_quadric if m violates the
/// Study condition.
bool complex_contains(const DisplacementComplex& cx, const DualQuaterniond& m,
                      double tol = kDefaultTol);

/// Relative X4 displacement (E conj F, E conj U + T conj F) taking the pose
/// m = F + eps U onto the pole E + eps T.
DualQuaterniond relative_motion(const DualQuaterniond& pole, const DualQuaterniond& m);

/// The axis displacement psh(pole). Need not itself be a member.
DualQuaterniond complex_axis(const DisplacementComplex& cx);

/// T pure on the unit-E representative, i.e. the translation is orthogonal to E.
bool is_orthogonal_x4(const DualQuaterniond& x, double tol = kDefaultTol);

/// n members of the complex, reproducible for a fixed seed.
std::vector<DualQuaterniond> sample_complex_members(const DisplacementComplex& cx, int n,
                                                    std::uint64_t seed);

}  // namespace studykin
