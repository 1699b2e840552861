#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "weakphase/config.hpp"

namespace weakphase {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitNumerical = 2 };

struct ExecuteOptions {
  std::filesystem::path out_dir;
  std::filesystem::path base_dir;  // relative input paths (dic.profile) resolve here
  unsigned workers = 1;
};

/// Runs one validated config and writes its data files into opts.out_dir.
/// Human-readable summaries go to `out`, diagnostics to `err`.
/// Returns kExitNumerical if any readout failed numerically (files are still written).
int execute(const RunConfig& cfg, const ExecuteOptions& opts, std::ostream& out, std::ostream& err);

/// CLI entry: reads the config file, parses, executes, and maps exceptions to exit codes.
int run_command(std::optional<Command> command, const std::filesystem::path& config_path,
                const std::filesystem::path& out_dir, unsigned workers, std::ostream& out,
                std::ostream& err);

/// "1.23 fs" style rendering with an explicit unit suffix.
std::string format_duration(double seconds);

}  // namespace weakphase
