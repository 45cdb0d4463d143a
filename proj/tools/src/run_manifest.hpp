#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace pansphere::cli {

namespace fs = std::filesystem;

/// Reproducibility record written once per run: tool version, command line,
/// seed, and SHA-256 digests of every input and output. No timestamps.
class RunManifest {
 public:
  RunManifest(std::string command, std::vector<std::string> argv);

  void set_seed(std::uint64_t seed) { seed_ = seed; }
  /// Files, or directories whose regular files are listed recursively.
  void add_input(const fs::path& path) { inputs_.push_back(path); }
  void add_output(const fs::path& path) { outputs_.push_back(path); }
  /// Text that went to stdout, recorded as the pseudo-path "-".
  void add_stdout(const std::string& text) { stdout_ = text; }

  void set_path(const fs::path& path) { path_ = path; }
  const fs::path& path() const noexcept { return path_; }

  std::string to_json() const;
  void write() const;

 private:
  std::string command_;
  std::vector<std::string> argv_;
  std::optional<std::uint64_t> seed_;
  std::vector<fs::path> inputs_;
  std::vector<fs::path> outputs_;
  std::optional<std::string> stdout_;
  fs::path path_;
};

/// "<file>.manifest.json" next to an output file.
fs::path manifest_beside(const fs::path& output);
/// "run_manifest.json" inside an output directory.
fs::path manifest_inside(const fs::path& dir);

}  // namespace pansphere::cli
