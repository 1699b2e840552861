#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "weakphase/metrology.hpp"

namespace weakphase {

enum class Command { weak_real, weak_imag, interferometry, compare, dic, sweep };

std::string_view to_string(Command c);
std::optional<Command> command_from_string(std::string_view s);

struct GridSettings {
  std::size_t n_samples = std::size_t{1} << 14;
  double half_span_sigmas = 16.0;
};

struct SchemeParams {
  double tau = 0.0;
  double delta = 0.1;
  double phi = 0.1;
};

struct DicParams {
  std::string profile_path;
  std::optional<double> shear;  // defaults to one pixel
  double analyzer_offset = 0.0;
};

enum class AxisScale { linear, log };

struct SweepAxis {
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  AxisScale scale = AxisScale::linear;

  /// Evenly spaced (or log-spaced) points; both endpoints are reproduced exactly.
  std::vector<double> values() const;
};

struct SweepSettings {
  Command scheme = Command::weak_imag;
  std::vector<SweepAxis> axes;
};

struct OutputSettings {
  std::string results_file = "results.json";
  bool plot_data = true;
};

struct RunConfig {
  Command command = Command::compare;
  ErrorBudget budget;
  SchemeParams scheme;
  GridSettings grid;
  std::optional<DicParams> dic;
  std::optional<SweepSettings> sweep;
  OutputSettings outputs;
};

/// Names accepted by sweep axes.
const std::vector<std::string>& sweep_parameters();

/// Writes `value` into the field named `parameter` (see sweep_parameters()).
void set_parameter(RunConfig& cfg, std::string_view parameter, double value);

/// Strict parse: unknown keys are rejected. If the document has a "command"
/// key it must agree with `cli_command`. Throws ParseError for malformed JSON
/// and ValidationError (with the dotted field path) for bad values.
RunConfig parse_config(std::string_view text, std::optional<Command> cli_command = std::nullopt);

/// Checks an emitted results document against the output schema of its command.
/// Throws ValidationError naming the first offending field.
void validate_results(const nlohmann::json& results);

}  // namespace weakphase
