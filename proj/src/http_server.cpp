#include "studykin/http_server.hpp"

#include <filesystem>
#include <functional>
#include <iostream>
#include <mutex>

namespace studykin {

namespace {

constexpr const char* kJson = "application/json";
constexpr const char* kSceneRoute = R"(/scenes/([A-Za-z0-9_-]+))";

void send_error(httplib::Response& res, int status, const std::string& code, const std::string& msg) {
  res.status = status;
  res.set_content(api::payload(api::error_body(code, msg)), kJson);
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::bad_input, std::string("request body is not valid JSON: ") + e.what());
  }
}

/// Runs `fn` and maps every failure onto the {code, message} error body.
void guarded(httplib::Response& res, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    send_error(res, api::http_status(e.code()), std::string(to_string(e.code())), e.what());
  } catch (const IoError& e) {
    send_error(res, 500, "io_error", e.what());
  } catch (const json::exception& e) {
    send_error(res, 400, "bad_input", e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, "internal", e.what());
  }
}

using Handler = json (*)(const json&, const api::Options&);

void post_json(httplib::Server& server, const std::string& path, Handler handler,
               const api::Options& opt) {
  server.Post(path, [handler, opt](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { res.set_content(api::payload(handler(parse_body(req), opt)), kJson); });
  });
}

/// Request object for a design handler, with the stored scene under "scene".
json with_scene(const httplib::Request& req, const SceneStore& store) {
  json body = parse_body(req);
  if (!body.is_object()) throw Error(ErrorCode::bad_input, "request body must be a JSON object");
  const Scene scene = store.load(req.matches[1]);
  body["scene"] = scene_to_json(scene.cs, scene.meta);
  return body;
}

json scene_summary(const Scene& s) {
  return {{"id", s.id}, {"created", s.created}, {"modified", s.modified}};
}

}  // namespace

void install_routes(httplib::Server& server, SceneStore& store, const api::Options& opt,
                    const std::string& ui_dir) {
  post_json(server, "/act", api::act, opt);
  post_json(server, "/psh", api::psh, opt);
  post_json(server, "/project", api::project, opt);
  post_json(server, "/classify", api::classify, opt);
  post_json(server, "/darboux", api::darboux, opt);
  post_json(server, "/complex/contains", api::complex_contains, opt);
  post_json(server, "/complex/axis", api::complex_axis, opt);
  post_json(server, "/complex/relative", api::complex_relative, opt);
  post_json(server, "/complex/members", api::complex_members, opt);
  post_json(server, "/design/eval", api::design_eval, opt);
  post_json(server, "/design/excursion", api::design_excursion, opt);
  post_json(server, "/design/optimize", api::design_optimize, opt);
  post_json(server, "/design/farin", api::design_farin, opt);
  post_json(server, "/design/demo", api::design_demo, opt);

  server.Post("/export", [opt](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = parse_body(req);
      const std::string format = body.is_object() ? body.value("format", std::string("csv")) : "csv";
      res.set_content(api::export_motion(body, opt), format == "json" ? kJson : "text/csv");
    });
  });

  server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(api::payload({{"status", "ok"}}), kJson);
  });

  server.Get("/scenes", [&store](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      json out = json::array();
      for (const auto& id : store.list()) out.push_back(scene_summary(store.load(id)));
      res.set_content(api::payload(out), kJson);
    });
  });

  server.Post("/scenes", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = parse_body(req);
      const auto cs = scene_from_json(body);
      const Scene scene = store.create(cs, body.value("meta", json::object()));
      res.status = 201;
      res.set_content(api::payload(scene_record_to_json(scene)), kJson);
    });
  });

  server.Get(kSceneRoute, [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { res.set_content(api::payload(scene_record_to_json(store.load(req.matches[1]))), kJson); });
  });

  server.Put(kSceneRoute, [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string id = req.matches[1];
      const json body = parse_body(req);
      const auto cs = scene_from_json(body);
      std::lock_guard lock(store.scene_mutex(id));
      const Scene scene = store.update(id, cs, body.value("meta", json::object()));
      res.set_content(api::payload(scene_record_to_json(scene)), kJson);
    });
  });

  const auto scene_op = [&server, &store, opt](const std::string& suffix, Handler handler) {
    server.Post(std::string(kSceneRoute) + suffix,
                [&store, opt, handler](const httplib::Request& req, httplib::Response& res) {
                  guarded(res, [&] {
                    res.set_content(api::payload(handler(with_scene(req, store), opt)), kJson);
                  });
                });
  };
  scene_op("/evaluate", api::design_eval);
  scene_op("/excursion", api::design_excursion);
  scene_op("/farin", api::design_farin);

  // Optimization holds the scene lock for the whole run and writes the result
  // back only when the request sets "persist": true.
  server.Post(std::string(kSceneRoute) + "/optimize",
              [&store, opt](const httplib::Request& req, httplib::Response& res) {
                guarded(res, [&] {
                  const std::string id = req.matches[1];
                  std::lock_guard lock(store.scene_mutex(id));
                  json body = with_scene(req, store);
                  const bool persist = body.value("persist", false);
                  const json result = api::design_optimize(body, opt);
                  if (persist) {
                    store.update(id, scene_from_json(result.at("scene")),
                                 result.at("scene").value("meta", json::object()));
                  }
                  res.set_content(api::payload(result), kJson);
                });
              });

  if (!ui_dir.empty() && std::filesystem::is_directory(ui_dir)) {
    server.set_mount_point("/", ui_dir);
  }
}

bool serve(const std::string& host, int port, SceneStore& store, const api::Options& opt,
           const std::string& ui_dir) {
  httplib::Server server;
  install_routes(server, store, opt, ui_dir);
  std::cerr << "studykin listening on " << host << ":" << port << ", data in "
            << store.dir().string() << '\n';
  return server.listen(host, port);
}

}  // namespace studykin
