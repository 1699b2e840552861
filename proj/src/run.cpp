#include "weakphase/run.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include "weakphase/dic.hpp"
#include "weakphase/errors.hpp"
#include "weakphase/io.hpp"

namespace weakphase {
namespace {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write '" + path.string() + "'");
  os << text;
  if (!os) throw IoError("write failed for '" + path.string() + "'");
}

template <class Writer>
void write_csv(const fs::path& path, Writer&& w) {
  std::ostringstream ss;
  w(ss);
  write_text(path, ss.str());
}

std::string csv_field(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

ojson outcome_json(const SchemeOutcome& o) {
  return ojson{{"observable_shift", o.observable_shift},
               {"postselect_prob", o.postselect_prob},
               {"resolvable", o.resolvable},
               {"tau_min", o.tau_min},
               {"diagnostic", o.diagnostic}};
}

ojson budget_json(const ErrorBudget& b) {
  return ojson{{"epsilon", b.epsilon},       {"delta_t", b.delta_t},
               {"delta_omega", b.delta_omega}, {"omega_carrier", b.omega_carrier},
               {"sigma", b.sigma},           {"n_photons", b.n_photons},
               {"postselect_margin", b.postselect_margin}};
}

ojson report_json(const ComparisonReport& r) {
  return ojson{{"tau_min_real", r.tau_min_real},
               {"tau_min_imag", r.tau_min_imag},
               {"tau_min_interf", r.tau_min_interf},
               {"ratio_interf_over_imag", r.ratio_interf_over_imag},
               {"ratio_real_over_interf", r.ratio_real_over_interf}};
}

constexpr const char* kOutcomeHeader = "observable_shift,postselect_prob,resolvable,tau_min,diagnostic";

std::string outcome_row(const SchemeOutcome& o) {
  return format_double(o.observable_shift) + ',' + format_double(o.postselect_prob) + ',' +
         (o.resolvable ? "1" : "0") + ',' + format_double(o.tau_min) + ',' + csv_field(o.diagnostic);
}

TimeGrid grid_for(const RunConfig& cfg) {
  return TimeGrid::centered(cfg.budget.sigma, cfg.grid.n_samples, cfg.grid.half_span_sigmas);
}

struct RunState {
  const RunConfig& cfg;
  const ExecuteOptions& opts;
  std::ostream& out;
  std::ostream& err;
  ojson results;
  std::vector<std::string> files;
  bool numerical_failure = false;

  fs::path path(const std::string& name) {
    files.push_back(name);
    return opts.out_dir / name;
  }
};

void run_weak(RunState& st, bool imaginary) {
  const RunConfig& cfg = st.cfg;
  const TimeGrid grid = grid_for(cfg);
  const double tau = cfg.scheme.tau;
  const double angle = imaginary ? cfg.scheme.phi : cfg.scheme.delta;
  const Selection sel = imaginary ? preset_imag_wv(angle) : preset_real_wv(angle);
  WeakValueResult wv = weak_value(sel.pre, sel.post);
  wv.a_w += cplx{0.0, 0.0};  // drop signed zeros
  const SchemeOutcome o = imaginary ? run_imag_wv_scheme(tau, angle, cfg.budget, grid)
                                    : run_real_wv_scheme(tau, angle, cfg.budget, grid);

  ojson inputs{{"tau", tau}, {imaginary ? "phi" : "delta", angle}, {"budget", budget_json(cfg.budget)},
               {"n_samples", grid.n_samples}, {"half_span_sigmas", cfg.grid.half_span_sigmas}};
  st.results["inputs"] = std::move(inputs);
  st.results["weak_value"] = ojson{{"re", wv.a_w.real()}, {"im", wv.a_w.imag()}};
  st.results["outcome"] = outcome_json(o);
  if (imaginary) {
    const double s2 = cfg.budget.sigma * cfg.budget.sigma;
    st.results["shift_constant_measured"] =
        (tau > 0.0 && o.diagnostic.empty()) ? ojson(o.observable_shift * s2 * angle / tau) : ojson(nullptr);
    st.results["shift_constant_stated"] = kStatedImagShiftPrefactor;
    st.results["shift_stated"] = kStatedImagShiftPrefactor * tau * wv.a_w.imag() / s2;
  } else {
    st.results["amplification"] =
        (tau > 0.0 && o.diagnostic.empty()) ? ojson(o.observable_shift / tau) : ojson(nullptr);
  }
  if (!o.diagnostic.empty()) {
    st.numerical_failure = true;
    st.err << "numerical failure: " << o.diagnostic << '\n';
  }

  write_csv(st.path("outcome.csv"), [&](std::ostream& os) {
    os << "tau," << (imaginary ? "phi," : "delta,") << kOutcomeHeader << '\n';
    os << format_double(tau) << ',' << format_double(angle) << ',' << outcome_row(o) << '\n';
  });

  if (cfg.outputs.plot_data) {
    const Envelope g = make_gaussian(cfg.budget.sigma, grid, 0.5 * (grid.t_start + grid.t_end()));
    const Envelope f = postselect_envelope(sel.pre, sel.post, g, tau);
    write_csv(st.path("pointer_exact.csv"), [&](std::ostream& os) { write_envelope_csv(os, f); });
    if (std::abs(tau * wv.a_w) < 0.5 * cfg.budget.sigma) {
      const Envelope approx = weak_approx_envelope(wv, g, tau);
      write_csv(st.path("pointer_weak_approx.csv"), [&](std::ostream& os) { write_envelope_csv(os, approx); });
    }
    if (imaginary) {
      write_csv(st.path("spectrum.csv"), [&](std::ostream& os) { write_spectrum_csv(os, dft_spectrum(f)); });
    }
  }

  st.out << (imaginary ? "imaginary" : "real") << " weak value: A_w = " << wv.a_w.real()
         << (wv.a_w.imag() < 0.0 ? " - " : " + ") << std::abs(wv.a_w.imag()) << "i, p = " << o.postselect_prob << '\n'
         << "  observable shift = " << o.observable_shift << (imaginary ? " rad/s" : " s")
         << ", resolvable = " << (o.resolvable ? "yes" : "no")
         << ", tau_min = " << format_duration(o.tau_min) << '\n';
}

void run_interf(RunState& st) {
  const RunConfig& cfg = st.cfg;
  const InterferometryOutcome r = run_interferometry(cfg.scheme.tau, cfg.budget);
  st.results["inputs"] = ojson{{"tau", cfg.scheme.tau}, {"budget", budget_json(cfg.budget)}};
  st.results["intensity_d1"] = r.intensity_d1;
  st.results["intensity_d2"] = r.intensity_d2;
  st.results["difference"] = r.difference;
  st.results["linearized"] = r.linearized;
  st.results["outcome"] = outcome_json(r.outcome);
  write_csv(st.path("outcome.csv"), [&](std::ostream& os) {
    os << "tau,intensity_d1,intensity_d2,difference,linearized," << kOutcomeHeader << '\n';
    os << format_double(cfg.scheme.tau) << ',' << format_double(r.intensity_d1) << ','
       << format_double(r.intensity_d2) << ',' << format_double(r.difference) << ','
       << format_double(r.linearized) << ',' << outcome_row(r.outcome) << '\n';
  });
  st.out << "interferometry: I1 = " << r.intensity_d1 << ", I2 = " << r.intensity_d2
         << ", |I2 - I1| = " << r.difference << " (linear " << r.linearized << ")"
         << ", resolvable = " << (r.outcome.resolvable ? "yes" : "no") << '\n';
}

void print_report_table(std::ostream& os, const ComparisonReport& r) {
  os << std::left << std::setw(34) << "scheme" << "tau_min\n"
     << std::setw(34) << "weak value, real (time domain)" << format_duration(r.tau_min_real) << '\n'
     << std::setw(34) << "weak value, imaginary (spectral)" << format_duration(r.tau_min_imag) << '\n'
     << std::setw(34) << "interferometry" << format_duration(r.tau_min_interf) << '\n'
     << std::setw(34) << "interferometry / imaginary" << r.ratio_interf_over_imag << '\n'
     << std::setw(34) << "real / interferometry" << r.ratio_real_over_interf << '\n'
     << std::right;
}

void run_compare(RunState& st) {
  const ComparisonReport r = compare_schemes(st.cfg.budget);
  st.results["budget"] = budget_json(st.cfg.budget);
  st.results["report"] = report_json(r);
  print_report_table(st.out, r);
}

void run_dic(RunState& st) {
  const DicParams& p = *st.cfg.dic;
  fs::path profile_path = p.profile_path;
  if (profile_path.is_relative()) profile_path = st.opts.base_dir / profile_path;
  const PhaseProfile profile = read_phase_profile_csv_file(profile_path.string());
  const double shear = p.shear.value_or(profile.dx);
  const DicImage img = dic_image(profile, shear, p.analyzer_offset);

  write_csv(st.path("dic_image.csv"), [&](std::ostream& os) { write_dic_csv(os, img); });
  const auto n_valid = std::count(img.valid.begin(), img.valid.end(), std::uint8_t{1});
  const double max_i = img.intensity.empty() ? 0.0 : *std::max_element(img.intensity.begin(), img.intensity.end());
  st.results["shear"] = shear;
  st.results["analyzer_offset"] = p.analyzer_offset;
  st.results["image_file"] = "dic_image.csv";
  st.results["n_pixels"] = img.intensity.size();
  st.results["n_valid"] = n_valid;
  st.results["max_intensity"] = max_i;
  st.out << "dic: " << img.intensity.size() << " pixels, " << n_valid << " valid, max intensity "
         << max_i << '\n';
}

struct SweepRow {
  SchemeOutcome outcome;
  ComparisonReport report;
  std::string error;
};

SweepRow sweep_point(const RunConfig& base, Command scheme, const std::string& param, double value) {
  RunConfig cfg = base;
  set_parameter(cfg, param, value);
  SweepRow row;
  try {
    switch (scheme) {
      case Command::weak_real:
        row.outcome = run_real_wv_scheme(cfg.scheme.tau, cfg.scheme.delta, cfg.budget, grid_for(cfg));
        break;
      case Command::weak_imag:
        row.outcome = run_imag_wv_scheme(cfg.scheme.tau, cfg.scheme.phi, cfg.budget, grid_for(cfg));
        break;
      case Command::interferometry:
        row.outcome = run_interferometry(cfg.scheme.tau, cfg.budget).outcome;
        break;
      default:
        row.report = compare_schemes(cfg.budget);
        break;
    }
  } catch (const NumericalError& e) {
    row.error = e.what();
  }
  if (row.error.empty()) row.error = row.outcome.diagnostic;
  return row;
}

void run_sweep(RunState& st) {
  const SweepSettings& sw = *st.cfg.sweep;
  st.results["scheme"] = std::string(to_string(sw.scheme));
  ojson axes = ojson::array();
  for (const SweepAxis& axis : sw.axes) {
    const std::vector<double> values = axis.values();
    std::vector<SweepRow> rows(values.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < values.size(); i = next++) {
        rows[i] = sweep_point(st.cfg, sw.scheme, axis.parameter, values[i]);
      }
    };
    const unsigned n_threads = std::clamp<unsigned>(st.opts.workers, 1u, static_cast<unsigned>(values.size()));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();

    const std::string file = "sweep_" + axis.parameter + ".csv";
    write_csv(st.path(file), [&](std::ostream& os) {
      if (sw.scheme == Command::compare) {
        os << axis.parameter
           << ",tau_min_real,tau_min_imag,tau_min_interf,ratio_interf_over_imag,ratio_real_over_interf,error\n";
      } else {
        os << axis.parameter << ',' << kOutcomeHeader << ",error\n";
      }
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const SweepRow& r = rows[i];
        os << format_double(values[i]) << ',';
        if (sw.scheme == Command::compare) {
          os << format_double(r.report.tau_min_real) << ',' << format_double(r.report.tau_min_imag) << ','
             << format_double(r.report.tau_min_interf) << ','
             << format_double(r.report.ratio_interf_over_imag) << ','
             << format_double(r.report.ratio_real_over_interf);
        } else {
          os << outcome_row(r.outcome);
        }
        os << ',' << csv_field(r.error) << '\n';
      }
    });
    std::size_t failures = 0;
    for (const SweepRow& r : rows) {
      if (!r.error.empty()) {
        ++failures;
        st.err << "sweep " << axis.parameter << ": " << r.error << '\n';
      }
    }
    if (failures > 0) st.numerical_failure = true;
    axes.push_back(ojson{{"parameter", axis.parameter},
                         {"scale", axis.scale == AxisScale::log ? "log" : "linear"},
                         {"count", axis.count},
                         {"start", axis.start},
                         {"stop", axis.stop},
                         {"file", file},
                         {"failures", failures}});
    st.out << "sweep " << axis.parameter << ": " << values.size() << " points -> " << file << '\n';
  }
  st.results["axes"] = std::move(axes);
}

}  // namespace

std::string format_duration(double seconds) {
  static constexpr std::pair<double, const char*> units[] = {
      {1.0, "s"}, {1e-3, "ms"}, {1e-6, "us"}, {1e-9, "ns"}, {1e-12, "ps"}, {1e-15, "fs"}, {1e-18, "as"}};
  double scale = 1e-21;
  const char* suffix = "zs";
  for (const auto& [s, name] : units) {
    if (std::abs(seconds) >= s) {
      scale = s;
      suffix = name;
      break;
    }
  }
  std::ostringstream ss;
  ss << std::setprecision(4) << seconds / scale << ' ' << suffix;
  return ss.str();
}

int execute(const RunConfig& cfg, const ExecuteOptions& opts, std::ostream& out, std::ostream& err) {
  RunState st{cfg, opts, out, err, ojson::object(), {}, false};
  st.results["command"] = std::string(to_string(cfg.command));
  fs::create_directories(opts.out_dir);

  switch (cfg.command) {
    case Command::weak_real: run_weak(st, false); break;
    case Command::weak_imag: run_weak(st, true); break;
    case Command::interferometry: run_interf(st); break;
    case Command::compare: run_compare(st); break;
    case Command::dic: run_dic(st); break;
    case Command::sweep: run_sweep(st); break;
  }

  st.results["files"] = st.files;
  validate_results(nlohmann::json::parse(st.results.dump()));
  write_text(opts.out_dir / cfg.outputs.results_file, st.results.dump(2) + "\n");
  return st.numerical_failure ? kExitNumerical : kExitOk;
}

int run_command(std::optional<Command> command, const fs::path& config_path, const fs::path& out_dir,
                unsigned workers, std::ostream& out, std::ostream& err) {
  try {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      err << "error: cannot read config '" << config_path.string() << "'\n";
      return kExitValidation;
    }
    std::stringstream text;
    text << in.rdbuf();
    const RunConfig cfg = parse_config(text.str(), command);
    ExecuteOptions opts{out_dir, config_path.parent_path(), std::max(1u, workers)};
    return execute(cfg, opts, out, err);
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const DomainError& e) {
    err << "invalid parameter: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const fs::filesystem_error& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace weakphase
