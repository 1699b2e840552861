#include "weakphase/config.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "weakphase/errors.hpp"

namespace weakphase {
namespace {

using nlohmann::json;

constexpr std::pair<Command, std::string_view> kCommandNames[] = {
    {Command::weak_real, "weak-real"},   {Command::weak_imag, "weak-imag"},
    {Command::interferometry, "interferometry"}, {Command::compare, "compare"},
    {Command::dic, "dic"},               {Command::sweep, "sweep"},
};

// Reads keys from one JSON object and rejects whatever was not consumed.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ValidationError(path_, "must be an object");
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  std::optional<double> number(const std::string& key) {
    if (!take(key)) return std::nullopt;
    const json& v = obj_.at(key);
    if (!v.is_number()) throw ValidationError(field(key), "must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ValidationError(field(key), "must be finite");
    return d;
  }

  double required_number(const std::string& key) {
    auto v = number(key);
    if (!v) throw ValidationError(field(key), "is required");
    return *v;
  }

  std::optional<std::string> string(const std::string& key) {
    if (!take(key)) return std::nullopt;
    const json& v = obj_.at(key);
    if (!v.is_string()) throw ValidationError(field(key), "must be a string");
    return v.get<std::string>();
  }

  std::optional<bool> boolean(const std::string& key) {
    if (!take(key)) return std::nullopt;
    const json& v = obj_.at(key);
    if (!v.is_boolean()) throw ValidationError(field(key), "must be a boolean");
    return v.get<bool>();
  }

  std::optional<long long> integer(const std::string& key) {
    if (!take(key)) return std::nullopt;
    const json& v = obj_.at(key);
    if (!v.is_number_integer()) throw ValidationError(field(key), "must be an integer");
    return v.get<long long>();
  }

  const json* child(const std::string& key) {
    if (!take(key)) return nullptr;
    return &obj_.at(key);
  }

  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void finish() const {
    for (const auto& [key, _] : obj_.items()) {
      if (!seen_.contains(key)) throw ValidationError(field(key), "unknown key");
    }
  }

 private:
  bool take(const std::string& key) {
    if (!obj_.contains(key)) return false;
    seen_.insert(key);
    return true;
  }

  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

ErrorBudget parse_budget(const json& j) {
  ObjectReader r(j, "budget");
  ErrorBudget b;
  b.epsilon = r.required_number("epsilon");
  b.delta_t = r.required_number("delta_t");
  b.sigma = r.required_number("sigma");
  b.n_photons = r.number("n_photons").value_or(1.0);
  b.postselect_margin = r.number("postselect_margin").value_or(1.0);

  const auto omega = r.number("omega_carrier");
  const auto lambda = r.number("wavelength");
  if (omega.has_value() == lambda.has_value()) {
    throw ValidationError("budget.omega_carrier", "give exactly one of omega_carrier or wavelength");
  }
  if (lambda && !(*lambda > 0.0)) throw ValidationError("budget.wavelength", "must be > 0");
  if (omega && !(*omega > 0.0)) throw ValidationError("budget.omega_carrier", "must be > 0");
  b.omega_carrier = omega ? *omega : omega_from_wavelength(*lambda);

  const auto dw = r.number("delta_omega");
  const auto dl = r.number("delta_lambda");
  if (dw.has_value() == dl.has_value()) {
    throw ValidationError("budget.delta_omega", "give exactly one of delta_omega or delta_lambda");
  }
  if (dl) {
    if (!(*dl > 0.0)) throw ValidationError("budget.delta_lambda", "must be > 0");
    const double lam = lambda ? *lambda : 2.0 * std::numbers::pi * kSpeedOfLight / b.omega_carrier;
    b.delta_omega = domega_from_dlambda(lam, *dl);
  } else {
    b.delta_omega = *dw;
  }
  r.finish();
  return b;
}

void check_budget(const ErrorBudget& b) {
  const std::pair<const char*, double> positive[] = {
      {"budget.epsilon", b.epsilon},     {"budget.delta_t", b.delta_t},
      {"budget.delta_omega", b.delta_omega}, {"budget.omega_carrier", b.omega_carrier},
      {"budget.sigma", b.sigma},         {"budget.n_photons", b.n_photons},
      {"budget.postselect_margin", b.postselect_margin},
  };
  for (const auto& [name, v] : positive) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(name, "must be > 0");
  }
  if (!(b.epsilon < 0.1)) throw ValidationError("budget.epsilon", "must be < 0.1 (small-angle regime)");
}

void check_scheme(const SchemeParams& s) {
  using std::numbers::pi;
  if (!(s.tau >= 0.0)) throw ValidationError("scheme.tau", "must be >= 0");
  if (s.delta == 0.0 || !(std::abs(s.delta) <= pi / 4)) {
    throw ValidationError("scheme.delta", "must satisfy 0 < |delta| <= pi/4");
  }
  if (s.phi == 0.0 || !(std::abs(s.phi) <= pi / 2)) {
    throw ValidationError("scheme.phi", "must satisfy 0 < |phi| <= pi/2");
  }
}

void check_values(const RunConfig& cfg) {
  if (cfg.command != Command::dic) check_budget(cfg.budget);
  check_scheme(cfg.scheme);
}

const std::vector<std::string>& allowed_for(Command scheme) {
  static const std::vector<std::string> real{"tau", "delta", "epsilon", "delta_t", "sigma"};
  static const std::vector<std::string> imag{"tau", "phi", "epsilon", "delta_omega", "sigma"};
  static const std::vector<std::string> interf{"tau", "epsilon", "omega_carrier", "n_photons"};
  static const std::vector<std::string> cmp{"epsilon", "delta_t", "delta_omega", "omega_carrier",
                                            "sigma"};
  switch (scheme) {
    case Command::weak_real: return real;
    case Command::weak_imag: return imag;
    case Command::interferometry: return interf;
    default: return cmp;
  }
}

SweepSettings parse_sweep(const json& j) {
  ObjectReader r(j, "sweep");
  SweepSettings s;
  const auto scheme_name = r.string("scheme");
  if (!scheme_name) throw ValidationError("sweep.scheme", "is required");
  const auto scheme = command_from_string(*scheme_name);
  if (!scheme || *scheme == Command::dic || *scheme == Command::sweep) {
    throw ValidationError("sweep.scheme", "must be one of weak-real, weak-imag, interferometry, compare");
  }
  s.scheme = *scheme;

  const json* axes = r.child("axes");
  if (axes == nullptr || !axes->is_array() || axes->empty()) {
    throw ValidationError("sweep.axes", "must be a non-empty array");
  }
  for (std::size_t i = 0; i < axes->size(); ++i) {
    const std::string path = "sweep.axes[" + std::to_string(i) + "]";
    ObjectReader a((*axes)[i], path);
    SweepAxis axis;
    const auto name = a.string("parameter");
    if (!name) throw ValidationError(path + ".parameter", "is required");
    const auto& allowed = allowed_for(s.scheme);
    if (std::find(allowed.begin(), allowed.end(), *name) == allowed.end()) {
      throw ValidationError(path + ".parameter",
                            "'" + *name + "' is not a parameter of " + std::string(to_string(s.scheme)));
    }
    axis.parameter = *name;
    axis.start = a.required_number("start");
    axis.stop = a.required_number("stop");
    const auto count = a.integer("count");
    if (!count || *count < 2) throw ValidationError(path + ".count", "must be an integer >= 2");
    axis.count = static_cast<int>(*count);
    const auto scale = a.string("scale").value_or("linear");
    if (scale == "log") {
      axis.scale = AxisScale::log;
      if (!(axis.start > 0.0 && axis.stop > 0.0)) {
        throw ValidationError(path + ".start", "log axes need positive endpoints");
      }
    } else if (scale != "linear") {
      throw ValidationError(path + ".scale", "must be 'linear' or 'log'");
    }
    a.finish();
    s.axes.push_back(std::move(axis));
  }
  r.finish();
  return s;
}

void require(bool ok, const std::string& field, const char* what) {
  if (!ok) throw ValidationError(field, what);
}

void require_number(const json& j, const std::string& key, const std::string& path) {
  require(j.contains(key) && j.at(key).is_number(), path.empty() ? key : path + "." + key,
          "must be a number");
}

void validate_outcome(const json& o, const std::string& path) {
  require(o.is_object(), path, "must be an object");
  for (const char* k : {"observable_shift", "postselect_prob", "tau_min"}) require_number(o, k, path);
  require(o.contains("resolvable") && o.at("resolvable").is_boolean(), path + ".resolvable",
          "must be a boolean");
  require(o.contains("diagnostic") && o.at("diagnostic").is_string(), path + ".diagnostic",
          "must be a string");
}

}  // namespace

std::string_view to_string(Command c) {
  for (const auto& [cmd, name] : kCommandNames) {
    if (cmd == c) return name;
  }
  return "?";
}

std::optional<Command> command_from_string(std::string_view s) {
  for (const auto& [cmd, name] : kCommandNames) {
    if (name == s) return cmd;
  }
  return std::nullopt;
}

std::vector<double> SweepAxis::values() const {
  std::vector<double> v(static_cast<std::size_t>(count));
  const double last = count - 1;
  for (int i = 0; i < count; ++i) {
    const double f = i / last;
    if (scale == AxisScale::log) {
      const double lo = std::log(start);
      const double hi = std::log(stop);
      v[i] = std::exp(lo + f * (hi - lo));
    } else {
      v[i] = start + f * (stop - start);
    }
  }
  v.front() = start;
  v.back() = stop;
  return v;
}

const std::vector<std::string>& sweep_parameters() {
  static const std::vector<std::string> names{"tau",     "delta",       "phi",
                                              "epsilon", "delta_t",     "delta_omega",
                                              "sigma",   "omega_carrier", "n_photons"};
  return names;
}

void set_parameter(RunConfig& cfg, std::string_view p, double value) {
  if (p == "tau") cfg.scheme.tau = value;
  else if (p == "delta") cfg.scheme.delta = value;
  else if (p == "phi") cfg.scheme.phi = value;
  else if (p == "epsilon") cfg.budget.epsilon = value;
  else if (p == "delta_t") cfg.budget.delta_t = value;
  else if (p == "delta_omega") cfg.budget.delta_omega = value;
  else if (p == "sigma") cfg.budget.sigma = value;
  else if (p == "omega_carrier") cfg.budget.omega_carrier = value;
  else if (p == "n_photons") cfg.budget.n_photons = value;
  else throw ValidationError(std::string(p), "unknown parameter");
}

const std::set<std::string> kTopLevelKeys = {"command", "budget", "scheme", "grid", "dic", "sweep", "outputs"};

RunConfig parse_config(std::string_view text, std::optional<Command> cli_command) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }

  ObjectReader r(doc, "");
  RunConfig cfg;
  for (const auto& [key, _] : doc.items()) {
    if (!kTopLevelKeys.contains(key)) throw ValidationError(key, "unknown key");
  }

  const auto cmd_name = r.string("command");
  std::optional<Command> cmd;
  if (cmd_name) {
    cmd = command_from_string(*cmd_name);
    if (!cmd) throw ValidationError("command", "unknown command '" + *cmd_name + "'");
    if (cli_command && *cli_command != *cmd) {
      throw ValidationError("command", "config says '" + *cmd_name + "' but '" +
                                           std::string(to_string(*cli_command)) + "' was requested");
    }
  } else {
    cmd = cli_command;
  }
  if (!cmd) throw ValidationError("command", "is required");
  cfg.command = *cmd;

  if (const json* b = r.child("budget")) {
    cfg.budget = parse_budget(*b);
  } else if (cfg.command != Command::dic) {
    throw ValidationError("budget", "is required");
  }

  if (const json* s = r.child("scheme")) {
    ObjectReader sr(*s, "scheme");
    cfg.scheme.tau = sr.number("tau").value_or(cfg.scheme.tau);
    cfg.scheme.delta = sr.number("delta").value_or(cfg.scheme.delta);
    cfg.scheme.phi = sr.number("phi").value_or(cfg.scheme.phi);
    sr.finish();
  }

  if (const json* g = r.child("grid")) {
    ObjectReader gr(*g, "grid");
    if (auto n = gr.integer("n_samples")) {
      if (*n < 16) throw ValidationError("grid.n_samples", "must be >= 16");
      cfg.grid.n_samples = static_cast<std::size_t>(*n);
    }
    if (auto h = gr.number("half_span_sigmas")) {
      if (!(*h > 0.0)) throw ValidationError("grid.half_span_sigmas", "must be > 0");
      cfg.grid.half_span_sigmas = *h;
    }
    gr.finish();
  }

  if (const json* d = r.child("dic")) {
    if (cfg.command != Command::dic) throw ValidationError("dic", "only valid with command dic");
    ObjectReader dr(*d, "dic");
    DicParams p;
    const auto path = dr.string("profile");
    if (!path || path->empty()) throw ValidationError("dic.profile", "is required");
    p.profile_path = *path;
    p.shear = dr.number("shear");
    p.analyzer_offset = dr.number("analyzer_offset").value_or(0.0);
    if (!(std::abs(p.analyzer_offset) < 0.3)) {
      throw ValidationError("dic.analyzer_offset", "must satisfy |offset| < 0.3");
    }
    dr.finish();
    cfg.dic = std::move(p);
  } else if (cfg.command == Command::dic) {
    throw ValidationError("dic", "is required for command dic");
  }

  if (const json* s = r.child("sweep")) {
    if (cfg.command != Command::sweep) throw ValidationError("sweep", "only valid with command sweep");
    cfg.sweep = parse_sweep(*s);
  } else if (cfg.command == Command::sweep) {
    throw ValidationError("sweep", "is required for command sweep");
  }

  if (const json* o = r.child("outputs")) {
    ObjectReader orr(*o, "outputs");
    if (auto f = orr.string("results")) {
      if (f->empty() || f->find('/') != std::string::npos || f->find('\\') != std::string::npos) {
        throw ValidationError("outputs.results", "must be a plain file name");
      }
      cfg.outputs.results_file = *f;
    }
    cfg.outputs.plot_data = orr.boolean("plot_data").value_or(true);
    orr.finish();
  }
  r.finish();

  check_values(cfg);
  if (cfg.sweep) {
    for (std::size_t i = 0; i < cfg.sweep->axes.size(); ++i) {
      const auto& axis = cfg.sweep->axes[i];
      const std::string path = "sweep.axes[" + std::to_string(i) + "]";
      for (const auto& [end, value] : {std::pair{"start", axis.start}, std::pair{"stop", axis.stop}}) {
        RunConfig probe = cfg;
        set_parameter(probe, axis.parameter, value);
        try {
          check_values(probe);
        } catch (const ValidationError& e) {
          throw ValidationError(path + "." + end, e.what());
        }
      }
    }
  }
  return cfg;
}

void validate_results(const nlohmann::json& j) {
  require(j.is_object(), "results", "must be an object");
  require(j.contains("command") && j.at("command").is_string(), "command", "must be a string");
  const auto cmd = command_from_string(j.at("command").get<std::string>());
  require(cmd.has_value(), "command", "unknown command");

  switch (*cmd) {
    case Command::weak_real:
    case Command::weak_imag: {
      require(j.contains("inputs") && j.at("inputs").is_object(), "inputs", "must be an object");
      require(j.contains("weak_value") && j.at("weak_value").is_object(), "weak_value",
              "must be an object");
      require_number(j.at("weak_value"), "re", "weak_value");
      require_number(j.at("weak_value"), "im", "weak_value");
      require(j.contains("outcome"), "outcome", "is required");
      validate_outcome(j.at("outcome"), "outcome");
      if (*cmd == Command::weak_imag) {
        require_number(j, "shift_constant_stated", "");
        require(j.contains("shift_constant_measured") &&
                    (j.at("shift_constant_measured").is_number() ||
                     j.at("shift_constant_measured").is_null()),
                "shift_constant_measured", "must be a number or null");
      }
      break;
    }
    case Command::interferometry:
      require(j.contains("outcome"), "outcome", "is required");
      validate_outcome(j.at("outcome"), "outcome");
      for (const char* k : {"intensity_d1", "intensity_d2", "difference", "linearized"}) {
        require(j.contains(k) && j.at(k).is_number(), k, "must be a number");
      }
      break;
    case Command::compare: {
      require(j.contains("report") && j.at("report").is_object(), "report", "must be an object");
      for (const char* k : {"tau_min_real", "tau_min_imag", "tau_min_interf",
                            "ratio_interf_over_imag", "ratio_real_over_interf"}) {
        require_number(j.at("report"), k, "report");
      }
      break;
    }
    case Command::dic:
      require(j.contains("image_file") && j.at("image_file").is_string(), "image_file",
              "must be a string");
      require(j.contains("n_pixels") && j.at("n_pixels").is_number_integer(), "n_pixels",
              "must be an integer");
      require(j.contains("n_valid") && j.at("n_valid").is_number_integer(), "n_valid",
              "must be an integer");
      require(j.contains("max_intensity") && j.at("max_intensity").is_number(), "max_intensity",
              "must be a number");
      break;
    case Command::sweep: {
      require(j.contains("scheme") && j.at("scheme").is_string(), "scheme", "must be a string");
      require(j.contains("axes") && j.at("axes").is_array(), "axes", "must be an array");
      const auto& axes = j.at("axes");
      for (std::size_t i = 0; i < axes.size(); ++i) {
        const std::string path = "axes[" + std::to_string(i) + "]";
        require(axes[i].is_object(), path, "must be an object");
        for (const char* k : {"parameter", "scale", "file"}) {
          require(axes[i].contains(k) && axes[i].at(k).is_string(), path + "." + k, "must be a string");
        }
        require(axes[i].contains("count") && axes[i].at("count").is_number_integer(),
                path + ".count", "must be an integer");
      }
      break;
    }
  }
}

}  // namespace weakphase
