#include "studykin/api.hpp"

#include <cmath>
#include <numbers>

#include "studykin/complexes.hpp"
#include "studykin/format.hpp"

namespace studykin::api {

namespace {

const json& field(const json& req, const char* key) {
  if (!req.is_object() || !req.contains(key)) {
    throw Error(ErrorCode::bad_input, std::string("missing field \"") + key + "\"");
  }
  return req.at(key);
}

double number_or(const json& req, const char* key, double fallback) {
  if (!req.is_object() || !req.contains(key)) return fallback;
  const json& v = req.at(key);
  if (!v.is_number()) throw Error(ErrorCode::bad_input, std::string("\"") + key + "\" must be a number");
  return v.get<double>();
}

int int_or(const json& req, const char* key, int fallback, int lo, int hi) {
  if (!req.is_object() || !req.contains(key)) return fallback;
  const json& v = req.at(key);
  if (!v.is_number_integer()) {
    throw Error(ErrorCode::bad_input, std::string("\"") + key + "\" must be an integer");
  }
  const auto value = v.get<long long>();
  if (value < lo || value > hi) {
    throw Error(ErrorCode::bad_input, std::string("\"") + key + "\" must lie in [" +
                                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(value);
}

std::vector<bool> bools(const json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::bad_input, std::string(what) + " must be an array");
  std::vector<bool> out;
  for (const auto& b : j) {
    if (!b.is_boolean()) throw Error(ErrorCode::bad_input, std::string(what) + " entries must be booleans");
    out.push_back(b.get<bool>());
  }
  return out;
}

Eigen::Vector4d point_or_origin(const json& req) {
  if (!req.contains("point")) return Eigen::Vector4d::Zero();
  return vector4_from_json(req.at("point"));
}

json certificate_to_json(const CircleCertificate& c) {
  return {{"verdict", to_string(c.verdict)},
          {"center", vector_to_json(c.center)},
          {"radius", c.radius},
          {"max_deviation", c.max_deviation},
          {"plane_residual", c.plane_residual}};
}

json trajectory_to_json(const Trajectory& traj) {
  json points = json::array();
  for (const auto& p : traj.points) points.push_back(vector_to_json(p));
  return {{"params", traj.params}, {"points", points}};
}

std::vector<double> uniform(int n, double lo, double hi) {
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) out[j] = lo + (hi - lo) * double(j) / double(n - 1);
  return out;
}

const char* kind_name(Se3Kind kind) {
  switch (kind) {
    case Se3Kind::identity: return "identity";
    case Se3Kind::translation: return "translation";
    case Se3Kind::rotation: return "rotation";
    case Se3Kind::screw: return "screw";
  }
  return "unknown";
}

}  // namespace

std::string payload(const json& j) { return j.dump() + "\n"; }

json error_body(const std::string& code, const std::string& message) {
  return {{"code", code}, {"message", message}};
}

int http_status(ErrorCode code) { return code == ErrorCode::not_found ? 404 : 400; }

json act(const json& req, const Options& opt) {
  const auto x = dq_from_json(field(req, "dq"));
  const json& pts = field(req, "points");
  if (!pts.is_array()) throw Error(ErrorCode::bad_input, "\"points\" must be an array");
  json out = json::array();
  for (const auto& p : pts) {
    if (p.is_array() && p.size() == 3) {
      out.push_back(vector_to_json(act_se3(x, vector3_from_json(p), opt.tol)));
    } else {
      out.push_back(vector_to_json(act_x4(x, vector4_from_json(p))));
    }
  }
  return {{"points", out}};
}

json psh(const json& req, const Options&) {
  const auto x = dq_from_json(field(req, "dq"));
  return {{"dq", dq_to_json(normalize(studykin::psh(x)))}};
}

json project(const json& req, const Options& opt) {
  const auto x = dq_from_json(field(req, "dq"));
  const auto projected = kotierte_projection(x);
  const auto pose = normalize(projected.pose);
  const auto type = se3_motion_type(pose, opt.tol);
  json out = {{"pose", dq_to_json(pose)},
              {"height", projected.height},
              {"se3", {{"kind", kind_name(type.kind)}, {"angle", type.angle}, {"slide", type.slide}}}};
  if (type.kind == Se3Kind::rotation || type.kind == Se3Kind::screw) {
    const auto axis = axis_in_hyperplane(pose, 0.0, opt.tol);
    out["axis"] = {{"point", vector_to_json(axis.point)}, {"direction", vector_to_json(axis.direction)}};
    out["gamma"] = grassmann_to_json(gamma_plane(pose, opt.tol));
  }
  return out;
}

json classify(const json& req, const Options& opt) {
  const P7Line line(dq_from_json(field(req, "a")), dq_from_json(field(req, "b")), opt.tol);
  return motion_class_to_json(classify_line(line, opt.tol));
}

json darboux(const json& req, const Options& opt) {
  const int samples = int_or(req, "samples", 64, 5, 100000);
  const Eigen::Vector4d p = point_or_origin(req);
  const bool circular = req.is_object() && req.contains("c");
  const auto taus = uniform(samples, -std::numbers::pi, std::numbers::pi);

  Trajectory traj;
  traj.params = taus;
  json out;
  if (circular) {
    const double c = number_or(req, "c", 0.0);
    const double rho = number_or(req, "rho", 0.0);
    if (!(c > 0.0)) throw Error(ErrorCode::bad_input, "\"c\" must be positive");
    for (double tau : taus) traj.points.push_back(act_x4(circular_darboux_pose(c, rho, tau), p));
    out = {{"motion", "circular-darboux"}, {"c", c}, {"rho", rho}};
  } else {
    KargerParams kp{number_or(req, "beta", 0.0), number_or(req, "gamma", 1.0),
                    number_or(req, "nu", 0.0), 0.0};
    kp.validate();
    for (double tau : taus) {
      kp.tau = tau;
      traj.points.push_back(karger_type1(kp, p));
    }
    kp.tau = 0.0;
    const auto abs_cert = absolute_sphere_test(rational_trajectory(kp, p), opt.tol);
    out = {{"motion", "karger-type1"},
           {"beta", kp.beta},
           {"gamma", kp.gamma},
           {"nu", kp.nu},
           {"absolute_sphere",
            {{"on_absolute", abs_cert.on_absolute},
             {"degenerate", abs_cert.degenerate},
             {"residual", abs_cert.residual}}}};
  }
  out["trajectory"] = trajectory_to_json(traj);
  out["circle"] = certificate_to_json(is_circular(traj, std::max(opt.tol, 1e-8)));
  return out;
}

json complex_contains(const json& req, const Options& opt) {
  const DisplacementComplex cx(dq_from_json(field(req, "pole")), opt.tol);
  const auto m = dq_from_json(field(req, "m"));
  return {{"contains", studykin::complex_contains(cx, m, opt.tol)},
          {"polar_value", study_bilinear(normalize(cx.pole()), normalize(m))}};
}

json complex_axis(const json& req, const Options& opt) {
  const DisplacementComplex cx(dq_from_json(field(req, "pole")), opt.tol);
  const auto axis = normalize(studykin::complex_axis(cx));
  json out = {{"axis", dq_to_json(axis)}, {"orthogonal", is_orthogonal_x4(cx.pole(), opt.tol)}};
  const auto type = se3_motion_type(axis, opt.tol);
  out["se3"] = {{"kind", kind_name(type.kind)}, {"angle", type.angle}, {"slide", type.slide}};
  return out;
}

json complex_relative(const json& req, const Options& opt) {
  const DisplacementComplex cx(dq_from_json(field(req, "pole")), opt.tol);
  const auto m = dq_from_json(field(req, "m"));
  const auto v = relative_motion(normalize(cx.pole()), normalize(m));
  return {{"relative", dq_to_json(v)},
          {"scalar", v.t().q0()},
          {"orthogonal", is_orthogonal_x4(v, opt.tol)}};
}

json complex_members(const json& req, const Options& opt) {
  const DisplacementComplex cx(dq_from_json(field(req, "pole")), opt.tol);
  const int n = int_or(req, "n", 10, 0, 100000);
  const int seed = int_or(req, "seed", 0, 0, 2147483647);
  json members = json::array();
  for (const auto& m : sample_complex_members(cx, n, static_cast<std::uint64_t>(seed))) {
    members.push_back(dq_to_json(normalize(m)));
  }
  return {{"members", members}};
}

json design_eval(const json& req, const Options&) {
  const auto cs = scene_from_json(field(req, "scene"));
  const int samples = int_or(req, "samples", 33, 2, 100000);
  return poses_to_json(motion_curve(cs, samples));
}

json design_excursion(const json& req, const Options&) {
  const auto cs = scene_from_json(field(req, "scene"));
  const int grid = int_or(req, "grid", 257, 2, 1000000);
  return {{"excursion", max_x0_excursion(cs, grid)}};
}

json design_optimize(const json& req, const Options& opt) {
  const json& scene = field(req, "scene");
  const auto cs = scene_from_json(scene);
  ParameterMask mask;
  if (req.contains("mask")) {
    const json& m = req.at("mask");
    if (!m.is_object()) throw Error(ErrorCode::bad_input, "\"mask\" must be an object");
    if (m.contains("farin")) mask.farin = bools(m.at("farin"), "mask.farin");
    if (m.contains("height")) mask.height = bools(m.at("height"), "mask.height");
  } else {
    // endpoint heights are pinned, so the default frees every interior one
    mask.height.assign(cs.ctrl().size(), true);
    mask.height.front() = false;
    mask.height.back() = false;
  }
  DesignObjective obj;
  obj.grid = int_or(req, "grid", obj.grid, 33, 100000);
  obj.tol = number_or(req, "tol", obj.tol);
  obj.max_cycles = int_or(req, "max_cycles", obj.max_cycles, 1, 10000);
  if (!(obj.tol > 0.0)) throw Error(ErrorCode::bad_input, "\"tol\" must be positive");
  (void)opt;
  const auto result = optimize_heights(cs, mask, obj);
  return {{"scene", scene_to_json(result.cs, scene.value("meta", json::object()))},
          {"initial", result.initial},
          {"final", result.final},
          {"trace", result.trace}};
}

json design_farin(const json& req, const Options& opt) {
  const auto cs = scene_from_json(field(req, "scene"));
  const int samples = int_or(req, "samples", 49, 2, 100000);
  json segments = json::array();
  for (int i = 0; i < cs.degree(); ++i) {
    const auto fp = farin_pose(cs, i);
    json arc = json::array();
    for (double f : uniform(samples, 0.01, 0.99)) {
      const Vector8<double> v = (1.0 - f) * cs.ctrl()[i].coords() + f * cs.ctrl()[i + 1].coords();
      const DualQuaterniond x(v);
      arc.push_back(vector_to_json(act_se3(normalize(studykin::psh(x)), Eigen::Vector3d::Zero().eval(), opt.tol)));
    }
    segments.push_back({{"segment", i},
                        {"f", cs.farin()[i]},
                        {"pose", dq_to_json(normalize(studykin::psh(fp.pose)))},
                        {"height", fp.height},
                        {"origin", vector_to_json(act_se3(normalize(studykin::psh(fp.pose)),
                                                          Eigen::Vector3d::Zero().eval(), opt.tol))},
                        {"arc", arc}});
  }
  return {{"segments", segments}};
}

json design_demo(const json& req, const Options&) {
  const std::string name = req.is_object() ? req.value("name", std::string("quadratic")) : "quadratic";
  if (name == "quadratic") {
    return scene_to_json(demo_scene_quadratic(), {{"name", name}, {"labels", {"0", "-28/9", "0"}}});
  }
  if (name == "planar") {
    return scene_to_json(demo_scene_planar_analogue(), {{"name", name}, {"labels", {"0", "1", "0"}}});
  }
  throw Error(ErrorCode::bad_input, "unknown demo scene \"" + name + "\"");
}

std::string export_motion(const json& req, const Options& opt) {
  const std::string format = req.is_object() ? req.value("format", std::string("csv")) : "csv";
  if (format != "csv" && format != "json") {
    throw Error(ErrorCode::bad_input, "\"format\" must be \"csv\" or \"json\"");
  }
  const int samples = int_or(req, "samples", 33, 2, 100000);
  const Eigen::Vector4d p = point_or_origin(req);

  if (req.contains("scene")) {
    const auto cs = scene_from_json(req.at("scene"));
    if (format == "json") return payload(poses_to_json(motion_curve(cs, samples)));
    Trajectory traj;
    traj.params = uniform(samples, 0.0, 1.0);
    for (double t : traj.params) traj.points.push_back(act_x4(decasteljau_eval(cs, t, opt.tol), p));
    return trajectory_csv(traj);
  }

  const P7Line line(dq_from_json(field(req, "a")), dq_from_json(field(req, "b")), opt.tol);
  const auto traj = sample_trajectory(line, p, uniform(samples, 0.0, 1.0), opt.tol);
  if (format == "json") return payload(trajectory_to_json(traj));
  return trajectory_csv(traj);
}

}  // namespace studykin::api
