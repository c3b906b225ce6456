// Command-line front end. Every subcommand reads one JSON request (from
// --json, --input or stdin), runs the shared API handler and writes the same
// payload the HTTP service would return.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "studykin/api.hpp"
#include "studykin/http_server.hpp"

namespace {

using studykin::json;
namespace api = studykin::api;

struct Inputs {
  std::string json_text;
  std::string input_path;
  std::optional<int> samples;
  std::optional<int> n;
  std::optional<int> seed;
  std::optional<int> grid;
  std::string format;
  bool summary = false;
};

json read_request(const Inputs& in) {
  std::string text;
  if (!in.json_text.empty()) {
    text = in.json_text;
  } else if (!in.input_path.empty() && in.input_path != "-") {
    std::ifstream file(in.input_path, std::ios::binary);
    if (!file) throw studykin::Error(studykin::ErrorCode::bad_input, "cannot read " + in.input_path);
    text.assign(std::istreambuf_iterator<char>(file), {});
  } else {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  }
  json req;
  try {
    req = text.find_first_not_of(" \t\r\n") == std::string::npos ? json::object() : json::parse(text);
  } catch (const json::parse_error& e) {
    throw studykin::Error(studykin::ErrorCode::bad_input, std::string("input is not valid JSON: ") + e.what());
  }
  if (!req.is_object()) throw studykin::Error(studykin::ErrorCode::bad_input, "input must be a JSON object");
  if (in.samples) req["samples"] = *in.samples;
  if (in.n) req["n"] = *in.n;
  if (in.seed) req["seed"] = *in.seed;
  if (in.grid) req["grid"] = *in.grid;
  if (!in.format.empty()) req["format"] = in.format;
  return req;
}

/// Design handlers take {"scene": ...}; a bare scene file is wrapped.
json as_design_request(json req) {
  if (req.contains("ctrl") && !req.contains("scene")) {
    json wrapped = json::object();
    for (const char* key : {"samples", "grid", "mask", "tol", "max_cycles", "format", "point"}) {
      if (req.contains(key)) {
        wrapped[key] = req.at(key);
        req.erase(key);
      }
    }
    wrapped["scene"] = std::move(req);
    return wrapped;
  }
  return req;
}

int fail(const std::string& code, const std::string& message, int status) {
  std::cerr << api::payload(api::error_body(code, message));
  return status;
}

template <typename Fn>
int run(Fn&& fn) {
  try {
    fn();
    return 0;
  } catch (const studykin::Error& e) {
    return fail(std::string(studykin::to_string(e.code())), e.what(), 2);
  } catch (const studykin::IoError& e) {
    return fail("io_error", e.what(), 3);
  } catch (const json::exception& e) {
    return fail("bad_input", e.what(), 2);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kinematic toolkit for the ambient space of the Study quadric"};
  app.require_subcommand(1);
  app.fallthrough();

  api::Options opt;
  Inputs in;
  app.add_option("--tol", opt.tol, "Tolerance for membership predicates")->check(CLI::PositiveNumber);
  app.add_option("-i,--input", in.input_path, "Request file (default: stdin)");
  app.add_option("--json", in.json_text, "Request as an inline JSON string");

  int exit_code = 0;
  const auto simple = [&](const char* name, const char* help, auto handler) {
    auto* sub = app.add_subcommand(name, help);
    sub->callback([&, handler] {
      exit_code = run([&] { std::cout << api::payload(handler(read_request(in), opt)); });
    });
    return sub;
  };

  simple("act", "Apply a displacement to points ({dq, points})", api::act);
  simple("psh", "Project onto the Study quadric ({dq})", api::psh);
  simple("project", "Height-labelled projection of a displacement ({dq})", api::project);

  auto* classify = app.add_subcommand("classify", "Classify the line through two poses ({a, b})");
  classify->add_flag("--summary", in.summary, "Print the one-line description only");
  classify->callback([&] {
    exit_code = run([&] {
      const json out = api::classify(read_request(in), opt);
      if (in.summary) {
        std::cout << out.at("summary").get<std::string>() << '\n';
      } else {
        std::cout << api::payload(out);
      }
    });
  });

  auto* darboux = simple("darboux", "Sample a Darboux motion trajectory", api::darboux);
  darboux->add_option("--samples", in.samples, "Number of samples");

  auto* complex = app.add_subcommand("complex", "Linear complexes of displacements");
  complex->require_subcommand(1);
  const auto complex_sub = [&](const char* name, const char* help, auto handler) {
    auto* sub = complex->add_subcommand(name, help);
    sub->callback([&, handler] {
      exit_code = run([&] { std::cout << api::payload(handler(read_request(in), opt)); });
    });
    return sub;
  };
  complex_sub("contains", "Membership test ({pole, m})", api::complex_contains);
  complex_sub("axis", "Axis displacement ({pole})", api::complex_axis);
  complex_sub("relative", "Relative motion onto the pole ({pole, m})", api::complex_relative);
  auto* members = complex_sub("members", "Seeded member sample ({pole, n, seed})", api::complex_members);
  members->add_option("-n", in.n, "Number of members");
  members->add_option("--seed", in.seed, "Sampler seed");

  auto* design = app.add_subcommand("design", "Rational motion design on a scene");
  design->require_subcommand(1);
  const auto design_sub = [&](const char* name, const char* help, auto handler) {
    auto* sub = design->add_subcommand(name, help);
    sub->callback([&, handler] {
      exit_code = run([&] {
        std::cout << api::payload(handler(as_design_request(read_request(in)), opt));
      });
    });
    return sub;
  };
  std::string demo_name;
  auto* demo = design->add_subcommand("demo", "Print a shipped demo scene");
  demo->add_option("name", demo_name, "quadratic or planar")->check(CLI::IsMember({"quadratic", "planar"}));
  demo->callback([&] {
    exit_code = run([&] {
      json req = json::object();
      if (!demo_name.empty()) req["name"] = demo_name;
      std::cout << api::payload(api::design_demo(req, opt));
    });
  });
  design_sub("eval", "Projected poses with heights", api::design_eval)
      ->add_option("--samples", in.samples, "Number of samples");
  design_sub("excursion", "Maximal x0 excursion", api::design_excursion)
      ->add_option("--grid", in.grid, "Search grid size");
  design_sub("optimize", "Minimize the excursion over free parameters", api::design_optimize);
  design_sub("farin", "Farin poses and their arcs", api::design_farin)
      ->add_option("--samples", in.samples, "Arc samples");

  auto* exp = app.add_subcommand("export", "Export a trajectory as CSV or JSON");
  exp->add_option("--format", in.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  exp->add_option("--samples", in.samples, "Number of samples");
  exp->callback([&] {
    exit_code = run([&] { std::cout << api::export_motion(as_design_request(read_request(in)), opt); });
  });

  std::string host = "127.0.0.1";
  int port = 8080;
  std::string data_dir;
  std::string ui_dir;
  if (const char* env = std::getenv("STUDYKIN_PORT"); env != nullptr && *env != '\0') port = std::atoi(env);
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port (default: STUDYKIN_PORT or 8080)");
  serve->add_option("--data", data_dir, "Scene directory (default: STUDYKIN_DATA)");
  serve->add_option("--ui", ui_dir, "Directory with a static UI bundle");
  serve->callback([&] {
    exit_code = run([&] {
      studykin::SceneStore store(data_dir.empty() ? studykin::SceneStore::default_dir()
                                                  : std::filesystem::path(data_dir));
      if (!studykin::serve(host, port, store, opt, ui_dir)) {
        throw studykin::IoError("cannot bind " + host + ":" + std::to_string(port));
      }
    });
  });

  CLI11_PARSE(app, argc, argv);
  return exit_code;
}
