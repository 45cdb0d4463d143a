#include <filesystem>
#include <iostream>

#include "commands.hpp"
#include "pansphere/errors.hpp"

using namespace pansphere;
using namespace pansphere::cli;

int main(int argc, char** argv) {
  CLI::App app{"Panoramic geometry, warping and depth-evaluation toolkit", "pansphere"};
  app.set_version_flag("--version", PANSPHERE_VERSION);
  app.require_subcommand(1);
  std::vector<Command> commands = register_commands(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    report_error("UsageError", e.what(), kExitIo);
    return kExitIo;
  }

  std::vector<std::string> args(argv, argv + argc);
  for (Command& c : commands) {
    if (!c.app->parsed()) continue;
    RunManifest manifest(c.app->get_name(), args);
    try {
      const int code = c.run(manifest);
      manifest.write();
      return code;
    } catch (const Error& e) {
      const int code = e.is_io() ? kExitIo : kExitDomain;
      report_error(error_name(e.code()), e.what(), code);
      return code;
    } catch (const CLI::ValidationError& e) {
      report_error("UsageError", e.what(), kExitIo);
      return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
      report_error(error_name(ErrorCode::Io), e.what(), kExitIo);
      return kExitIo;
    } catch (const std::exception& e) {
      report_error("InternalError", e.what(), kExitDomain);
      return kExitDomain;
    }
  }
  return kExitIo;
}
