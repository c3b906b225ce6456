#pragma once

#include <string>

// Eigen must come before httplib: <resolv.h> defines a `_res` macro.
#include "studykin/api.hpp"
#include "studykin/scene_store.hpp"

#include "httplib.h"

namespace studykin {

/// Registers every JSON route on `server`. Routes borrow `store`, which must
/// outlive the server. A non-empty `ui_dir` is served as static files under /.
void install_routes(httplib::Server& server, SceneStore& store, const api::Options& opt,
                    const std::string& ui_dir = {});

/// Blocking server loop; returns false if the port cannot be bound.
bool serve(const std::string& host, int port, SceneStore& store, const api::Options& opt,
           const std::string& ui_dir = {});

}  // namespace studykin
