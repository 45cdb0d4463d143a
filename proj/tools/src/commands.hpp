#pragma once

#include <functional>
#include <vector>

#include <CLI11.hpp>

#include "run_manifest.hpp"

namespace pansphere::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitDomain = 2;

struct Command {
  CLI::App* app = nullptr;
  /// Runs the parsed subcommand, filling in the manifest; returns the exit code.
  std::function<int(RunManifest&)> run;
};

std::vector<Command> register_commands(CLI::App& app);

/// One-line JSON error object on stderr.
void report_error(std::string_view name, std::string_view message, int exit_code);

}  // namespace pansphere::cli
