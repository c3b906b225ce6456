#include "studykin/scene_store.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace studykin {

namespace fs = std::filesystem;

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t secs = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool valid_id(const std::string& id) {
  return !id.empty() && id.size() <= 64 && std::all_of(id.begin(), id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
  });
}

}  // namespace

json scene_record_to_json(const Scene& scene) {
  return {{"id", scene.id},
          {"created", scene.created},
          {"modified", scene.modified},
          {"scene", scene_to_json(scene.cs, scene.meta)}};
}

SceneStore::SceneStore(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create data directory " + dir_.string() + ": " + ec.message());
}

fs::path SceneStore::default_dir() {
  if (const char* env = std::getenv("STUDYKIN_DATA"); env != nullptr && *env != '\0') return env;
  return fs::path("studykin-data");
}

fs::path SceneStore::path_for(const std::string& id) const { return dir_ / (id + ".json"); }

void SceneStore::write(const Scene& scene) const {
  const fs::path target = path_for(scene.id);
  const fs::path tmp = dir_ / (scene.id + ".json.tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << scene_record_to_json(scene).dump(2) << '\n';
    out.flush();
    if (!out) throw IoError("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move scene file into place: " + target.string());
  }
}

Scene SceneStore::create(const ControlStructure& cs, const json& meta) {
  std::lock_guard lock(registry_mutex_);
  int next = 1;
  for (const auto& id : list()) {
    if (id.size() > 6 && id.rfind("scene-", 0) == 0) {
      try {
        next = std::max(next, std::stoi(id.substr(6)) + 1);
      } catch (const std::exception&) {
      }
    }
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "scene-%06d", next);
  const std::string now = utc_now();
  Scene scene{buf, cs, meta.is_null() ? json::object() : meta, now, now};
  write(scene);
  return scene;
}

Scene SceneStore::load(const std::string& id) const {
  if (!valid_id(id) || !fs::exists(path_for(id))) {
    throw Error(ErrorCode::not_found, "no scene with id \"" + id + "\"");
  }
  std::ifstream in(path_for(id), std::ios::binary);
  if (!in) throw IoError("cannot read " + path_for(id).string());
  json record;
  try {
    in >> record;
  } catch (const json::exception& e) {
    throw IoError("corrupt scene file " + path_for(id).string() + ": " + e.what());
  }
  const json& body = record.at("scene");
  return Scene{record.at("id").get<std::string>(), scene_from_json(body),
               body.value("meta", json::object()), record.at("created").get<std::string>(),
               record.at("modified").get<std::string>()};
}

Scene SceneStore::update(const std::string& id, const ControlStructure& cs, const json& meta) {
  Scene scene = load(id);
  scene.cs = cs;
  scene.meta = meta.is_null() ? json::object() : meta;
  scene.modified = utc_now();
  write(scene);
  return scene;
}

std::vector<std::string> SceneStore::list() const {
  std::vector<std::string> ids;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir_, ec)) {
    const auto& p = entry.path();
    if (p.extension() == ".json" && valid_id(p.stem().string())) ids.push_back(p.stem().string());
  }
  if (ec) throw IoError("cannot list " + dir_.string() + ": " + ec.message());
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::mutex& SceneStore::scene_mutex(const std::string& id) {
  std::lock_guard lock(registry_mutex_);
  auto& slot = scene_mutexes_[id];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

}  // namespace studykin
