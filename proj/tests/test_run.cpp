#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "weakphase/config.hpp"
#include "weakphase/run.hpp"

using namespace weakphase;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("weakphase_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& config, const fs::path& out, unsigned workers = 1) {
  std::ostringstream o, e;
  return run_command(std::nullopt, fs::path(WEAKPHASE_CONFIG_DIR) / config, out, workers, o, e);
}

}  // namespace

TEST_CASE("every sample config runs and re-validates") {
  for (const char* name : {"compare_reference.json", "weak_real.json", "weak_imag.json", "interferometry.json",
                           "dic.json", "sweep_tau.json"}) {
    CAPTURE(name);
    const auto out = scratch(std::string("cfg_") + name);
    REQUIRE(run(name, out, 2) == kExitOk);
    const auto results = nlohmann::json::parse(slurp(out / "results.json"));
    CHECK_NOTHROW(validate_results(results));
    for (const auto& f : results.at("files")) CHECK(fs::exists(out / f.get<std::string>()));
  }
}

TEST_CASE("compare output carries the report") {
  const auto out = scratch("compare");
  REQUIRE(run("compare_reference.json", out) == kExitOk);
  const auto j = nlohmann::json::parse(slurp(out / "results.json"));
  const auto& r = j.at("report");
  const double ratio = r.at("tau_min_imag").get<double>() / r.at("tau_min_interf").get<double>();
  CHECK(ratio > 3.3e-4);
  CHECK(ratio < 1.5e-3);
}

TEST_CASE("weak-imag at tau = 0 writes a zero shift row") {
  const auto dir = scratch("imag_zero");
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "cfg.json");
    cfg << R"({"command": "weak-imag", "budget": {"epsilon": 0.01, "delta_t": 1e-11, "sigma": 1.0,
      "omega_carrier": 1.0, "delta_omega": 1e-4}, "scheme": {"tau": 0, "phi": 0.1},
      "outputs": {"plot_data": false}})";
  }
  std::ostringstream o, e;
  REQUIRE(run_command(Command::weak_imag, dir / "cfg.json", dir / "out", 1, o, e) == kExitOk);
  std::istringstream csv(slurp(dir / "out" / "outcome.csv"));
  std::string header, row;
  std::getline(csv, header);
  std::getline(csv, row);
  CHECK(header.rfind("tau,phi,observable_shift", 0) == 0);
  std::istringstream fields(row);
  std::string tau, phi, shift;
  std::getline(fields, tau, ',');
  std::getline(fields, phi, ',');
  std::getline(fields, shift, ',');
  CHECK(tau == "0");
  CHECK(std::abs(std::stod(shift)) < 1e-9);
  const auto j = nlohmann::json::parse(slurp(dir / "out" / "results.json"));
  CHECK(j.at("shift_constant_measured").is_null());
}

TEST_CASE("exit codes") {
  const auto dir = scratch("exit");
  fs::create_directories(dir);
  std::ostringstream o, e;

  CHECK(run_command(Command::compare, dir / "missing.json", dir / "out", 1, o, e) == kExitValidation);

  {
    std::ofstream(dir / "bad.json") << "{\"command\": \"compare\", \"budget\": {\"sigma\": -1}}";
  }
  CHECK(run_command(Command::compare, dir / "bad.json", dir / "out", 1, o, e) == kExitValidation);

  {
    std::ofstream(dir / "mismatch.json") << std::string(R"({"command": "compare"})");
  }
  CHECK(run_command(Command::dic, dir / "mismatch.json", dir / "out", 1, o, e) == kExitValidation);

  // Tau so large that the translated pulse leaves the grid: numerical failure.
  {
    std::ofstream(dir / "wide.json") << R"({"command": "weak-real", "budget": {"epsilon": 0.01,
      "delta_t": 1e-11, "sigma": 1.0, "omega_carrier": 1.0, "delta_omega": 1e-4},
      "scheme": {"tau": 20.0, "delta": 0.1}})";
  }
  CHECK(run_command(Command::weak_real, dir / "wide.json", dir / "out", 1, o, e) == kExitNumerical);
  CHECK(e.str().find("numerical failure") != std::string::npos);
}

TEST_CASE("sweeps are order-preserving and independent of the worker count") {
  const auto a = scratch("sweep1");
  const auto b = scratch("sweep4");
  REQUIRE(run("sweep_tau.json", a, 1) == kExitOk);
  REQUIRE(run("sweep_tau.json", b, 4) == kExitOk);
  CHECK(slurp(a / "sweep_tau.csv") == slurp(b / "sweep_tau.csv"));
  CHECK(slurp(a / "sweep_phi.csv") == slurp(b / "sweep_phi.csv"));
  CHECK(slurp(a / "results.json") == slurp(b / "results.json"));
}

TEST_CASE("format_duration") {
  CHECK(format_duration(2.5e-16) == "250 as");
  CHECK(format_duration(1e-11) == "10 ps");
  CHECK(format_duration(3.7162e-16) == "371.6 as");
}
