#include "studykin/io.hpp"

#include <sstream>

#include "studykin/format.hpp"

namespace studykin {

namespace {

template <int N>
Eigen::Matrix<double, N, 1> fixed_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != N) {
    throw Error(ErrorCode::bad_input,
                std::string(what) + ": expected an array of " + std::to_string(N) + " numbers");
  }
  Eigen::Matrix<double, N, 1> out;
  for (int i = 0; i < N; ++i) {
    if (!j[i].is_number()) throw Error(ErrorCode::bad_input, std::string(what) + ": non-numeric entry");
    out[i] = j[i].get<double>();
  }
  return out;
}

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::bad_input, std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

}  // namespace

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Eigen::Vector4d vector4_from_json(const json& j) { return fixed_from_json<4>(j, "4-vector"); }
Eigen::Vector3d vector3_from_json(const json& j) { return fixed_from_json<3>(j, "3-vector"); }

json dq_to_json(const DualQuaterniond& x) {
  return {{"e", vector_to_json(x.e().coeffs())}, {"t", vector_to_json(x.t().coeffs())}};
}

DualQuaterniond dq_from_json(const json& j) {
  const Eigen::Vector4d e = fixed_from_json<4>(member(j, "e"), "dual quaternion \"e\"");
  const Eigen::Vector4d t = fixed_from_json<4>(member(j, "t"), "dual quaternion \"t\"");
  return {Quaterniond(e), Quaterniond(t)};
}

json scene_to_json(const ControlStructure& cs, const json& meta) {
  json ctrl = json::array();
  for (const auto& c : cs.ctrl()) ctrl.push_back(dq_to_json(c));
  return {{"ctrl", ctrl}, {"farin", cs.farin()}, {"meta", meta.is_null() ? json::object() : meta}};
}

ControlStructure scene_from_json(const json& j) {
  const json& ctrl_json = member(j, "ctrl");
  const json& farin_json = member(j, "farin");
  if (!ctrl_json.is_array() || !farin_json.is_array()) {
    throw Error(ErrorCode::bad_input, "scene: \"ctrl\" and \"farin\" must be arrays");
  }
  std::vector<DualQuaterniond> ctrl;
  for (const auto& c : ctrl_json) ctrl.push_back(dq_from_json(c));
  std::vector<double> farin;
  for (const auto& f : farin_json) {
    if (!f.is_number()) throw Error(ErrorCode::bad_input, "scene: non-numeric Farin parameter");
    farin.push_back(f.get<double>());
  }
  return ControlStructure(std::move(ctrl), std::move(farin));
}

json poses_to_json(const std::vector<CurveSample>& samples) {
  json out = json::array();
  for (const auto& s : samples) {
    out.push_back({{"t", s.t}, {"pose", dq_to_json(s.pose)}, {"height", s.height}});
  }
  return out;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream out;
  out << "s,x0,x1,x2,x3\n";
  for (std::size_t i = 0; i < traj.points.size(); ++i) {
    out << format_double(traj.params[i]);
    for (int k = 0; k < 4; ++k) out << ',' << format_double(traj.points[i][k]);
    out << '\n';
  }
  return out.str();
}

json grassmann_to_json(const GrassmannPlane<double>& plane) {
  return {{"lbar", vector_to_json(plane.lbar.coeffs())},
          {"lhat", vector_to_json(plane.lhat.coeffs())},
          {"moment", vector_to_json(plane.moment.coeffs())}};
}

json motion_class_to_json(const MotionClass& cls) {
  json out = {{"class", class_name(cls)}, {"summary", describe(cls)}};
  if (const auto* t = std::get_if<TranslationMotion>(&cls)) {
    out["direction"] = vector_to_json(t->direction);
  } else if (const auto* r = std::get_if<PlaneRotationMotion>(&cls)) {
    out["plane"] = grassmann_to_json(r->plane);
    out["height"] = r->height;
  } else if (const auto* d = std::get_if<CircularDarbouxMotion>(&cls)) {
    out["plane"] = grassmann_to_json(d->plane);
    out["c"] = d->c;
    out["rho"] = d->rho;
  }
  return out;
}

}  // namespace studykin
