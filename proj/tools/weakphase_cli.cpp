#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "weakphase/config.hpp"
#include "weakphase/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Simulate and compare weak-value and interferometric measurements of a small delay"};

  std::string command;
  std::string config_path;
  std::string out_dir;
  unsigned workers = 1;
  app.add_option("command", command, "weak-real | weak-imag | interferometry | compare | dic | sweep")
      ->required()
      ->check(CLI::IsMember({"weak-real", "weak-imag", "interferometry", "compare", "dic", "sweep"}));
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "output directory")->required();
  app.add_option("--workers", workers, "concurrent sweep points")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : weakphase::kExitValidation;
  }

  return weakphase::run_command(weakphase::command_from_string(command), config_path, out_dir, workers,
                                std::cout, std::cerr);
}
