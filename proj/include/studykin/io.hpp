#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "studykin/design.hpp"
#include "studykin/motions.hpp"

namespace studykin {

using json = nlohmann::json;

// {"e":[e0,e1,e2,e3],"t":[t0,t1,t2,t3]}
json dq_to_json(const DualQuaterniond& x);
DualQuaterniond dq_from_json(const json& j);

json vector_to_json(const Eigen::VectorXd& v);
Eigen::Vector4d vector4_from_json(const json& j);
Eigen::Vector3d vector3_from_json(const json& j);

// {"ctrl":[dq...],"farin":[f...],"meta":{...}}
json scene_to_json(const ControlStructure& cs, const json& meta = json::object());
ControlStructure scene_from_json(const json& j);

/// [{"t": t, "pose": dq, "height": h}, ...]
json poses_to_json(const std::vector<CurveSample>& samples);

/// Header "s,x0,x1,x2,x3", one row per sample, shortest round-trip decimals.
std::string trajectory_csv(const Trajectory& traj);

json grassmann_to_json(const GrassmannPlane<double>& plane);
json motion_class_to_json(const MotionClass& cls);

}  // namespace studykin
