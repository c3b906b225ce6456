#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "studykin/design.hpp"
#include "studykin/io.hpp"

namespace studykin {

struct Scene {
  std::string id;
  ControlStructure cs;
  json meta;
  std::string created;
  std::string modified;
};

json scene_record_to_json(const Scene& scene);

/// File-per-scene JSON persistence. Writes go through a temporary file and a
/// rename, so a scene file is either the old or the new version.
class SceneStore {
 public:
  explicit SceneStore(std::filesystem::path dir);

  /// Directory from STUDYKIN_DATA, falling back to ./studykin-data.
  static std::filesystem::path default_dir();

  const std::filesystem::path& dir() const { return dir_; }

  Scene create(const ControlStructure& cs, const json& meta = json::object());
  Scene load(const std::string& id) const;
  Scene update(const std::string& id, const ControlStructure& cs, const json& meta);
  std::vector<std::string> list() const;

  /// Exclusive per-scene lock for mutations and optimizer runs.
  std::mutex& scene_mutex(const std::string& id);

 private:
  std::filesystem::path path_for(const std::string& id) const;
  void write(const Scene& scene) const;

  std::filesystem::path dir_;
  std::mutex registry_mutex_;
  std::map<std::string, std::unique_ptr<std::mutex>> scene_mutexes_;
};

}  // namespace studykin
