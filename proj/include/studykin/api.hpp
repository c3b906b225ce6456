#pragma once

#include <string>

#include "studykin/io.hpp"
#include "studykin/scene_store.hpp"

namespace studykin::api {

/// Request handlers shared by the CLI and the HTTP service. Both front ends
/// serialize results through `payload`, so the same logical request produces
/// the same bytes on either side.

struct Options {
  double tol = kDefaultTol;
};

/// Compact JSON followed by a newline.
std::string payload(const json& j);

/// {"code": ..., "message": ...}
json error_body(const std::string& code, const std::string& message);

/// HTTP status for an error code: 404 for not_found, 400 otherwise.
int http_status(ErrorCode code);

// {"dq": dq, "points": [[x0,x1,x2,x3] | [x,y,z], ...]}. Four-vectors go through
// the X4 action, three-vectors through the SE(3) action.
json act(const json& req, const Options& opt);

// {"dq": dq} -> {"dq": normalized psh image}
json psh(const json& req, const Options& opt);

// {"dq": dq} -> projected pose, height, SE(3) type and axis
json project(const json& req, const Options& opt);

// {"a": dq, "b": dq}
json classify(const json& req, const Options& opt);

// {"beta","gamma","nu", "point"?, "samples"?} or {"c","rho", "point"?, "samples"?}
json darboux(const json& req, const Options& opt);

// {"pole": dq, "m": dq}
json complex_contains(const json& req, const Options& opt);
// {"pole": dq}
json complex_axis(const json& req, const Options& opt);
// {"pole": dq, "m": dq}
json complex_relative(const json& req, const Options& opt);
// {"pole": dq, "n": int, "seed": int}
json complex_members(const json& req, const Options& opt);

// {"scene": scene, "samples": int}
json design_eval(const json& req, const Options& opt);
// {"scene": scene, "grid"?: int}
json design_excursion(const json& req, const Options& opt);
// {"scene": scene, "mask"?: {"farin": [bool], "height": [bool]}, "tol"?, "grid"?, "max_cycles"?}
json design_optimize(const json& req, const Options& opt);
// {"scene": scene, "samples"?: int} -> Farin poses and the origin arcs they slide on
json design_farin(const json& req, const Options& opt);

// {"name"?: "quadratic"|"planar"} -> a shipped demo scene
json design_demo(const json& req, const Options& opt);

/// {"scene": scene, "format": "csv"|"json", "samples"?, "point"?} or
/// {"a": dq, "b": dq, "format": ..., "samples"?, "point"?}. CSV bodies are
/// returned verbatim, JSON bodies through `payload`.
std::string export_motion(const json& req, const Options& opt);

}  // namespace studykin::api
