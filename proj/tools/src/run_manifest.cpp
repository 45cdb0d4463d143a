#include "run_manifest.hpp"

#include <algorithm>
#include <json.hpp>

#include "pansphere/digest.hpp"
#include "pansphere/io.hpp"

namespace pansphere::cli {

RunManifest::RunManifest(std::string command, std::vector<std::string> argv)
    : command_(std::move(command)), argv_(std::move(argv)) {}

namespace {

nlohmann::ordered_json file_entry(const fs::path& p) {
  nlohmann::ordered_json e;
  e["path"] = p.generic_string();
  e["sha256"] = sha256_file(p);
  return e;
}

/// Regular files under each path (directories expanded), sorted, without `skip`.
std::vector<fs::path> collect_files(const std::vector<fs::path>& paths, const fs::path& skip) {
  std::vector<fs::path> files;
  for (const fs::path& p : paths) {
    if (fs::is_directory(p)) {
      for (const auto& entry : fs::recursive_directory_iterator(p)) {
        if (entry.is_regular_file() && entry.path() != skip) files.push_back(entry.path());
      }
    } else if (fs::is_regular_file(p) && p != skip) {
      files.push_back(p);
    }
  }
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());
  return files;
}

}  // namespace

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["tool"] = "pansphere";
  j["version"] = PANSPHERE_VERSION;
  j["command"] = command_;
  j["argv"] = argv_;
  j["seed"] = seed_ ? nlohmann::ordered_json(*seed_) : nlohmann::ordered_json(nullptr);

  j["inputs"] = nlohmann::ordered_json::array();
  for (const fs::path& p : collect_files(inputs_, path_)) j["inputs"].push_back(file_entry(p));
  j["outputs"] = nlohmann::ordered_json::array();
  for (const fs::path& p : collect_files(outputs_, path_)) j["outputs"].push_back(file_entry(p));
  if (stdout_) {
    const auto* bytes = reinterpret_cast<const unsigned char*>(stdout_->data());
    j["outputs"].push_back({{"path", "-"}, {"sha256", sha256_hex({bytes, stdout_->size()})}});
  }
  return j.dump(2) + "\n";
}

void RunManifest::write() const { io::write_text(path_, to_json()); }

fs::path manifest_beside(const fs::path& output) {
  fs::path p = output;
  p += ".manifest.json";
  return p;
}

fs::path manifest_inside(const fs::path& dir) { return dir / "run_manifest.json"; }

}  // namespace pansphere::cli
