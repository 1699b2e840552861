#include "weakphase/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "weakphase/errors.hpp"

namespace weakphase {
namespace {

bool parse_number(std::string s, double& out) {
  const auto first = s.find_first_not_of(" \t\r");
  const auto last = s.find_last_not_of(" \t\r");
  if (first == std::string::npos) return false;
  s = s.substr(first, last - first + 1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ec == std::errc{} ? ptr : buf);
}

void write_envelope_csv(std::ostream& os, const Envelope& env) {
  os << "t,re,im\n";
  for (std::size_t i = 0; i < env.amps.size(); ++i) {
    os << format_double(env.grid.t(i)) << ',' << format_double(env.amps[i].real()) << ','
       << format_double(env.amps[i].imag()) << '\n';
  }
}

void write_spectrum_csv(std::ostream& os, const Spectrum& s) {
  os << "omega,intensity\n";
  for (std::size_t k = 0; k < s.vals.size(); ++k) {
    os << format_double(s.w(k)) << ',' << format_double(s.vals[k]) << '\n';
  }
}

void write_dic_csv(std::ostream& os, const DicImage& img) {
  os << "x,intensity,valid\n";
  for (std::size_t i = 0; i < img.intensity.size(); ++i) {
    os << format_double(img.x_start + static_cast<double>(i) * img.dx) << ','
       << format_double(img.intensity[i]) << ',' << static_cast<int>(img.valid[i]) << '\n';
  }
}

PhaseProfile read_phase_profile_csv(std::istream& is) {
  std::vector<double> xs;
  std::vector<double> phases;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto comma = line.find(',');
    double x = 0.0;
    double ph = 0.0;
    const bool ok = comma != std::string::npos && parse_number(line.substr(0, comma), x) &&
                    parse_number(line.substr(comma + 1), ph);
    if (!ok) {
      if (xs.empty() && line_no == 1) continue;  // header
      throw ParseError("phase profile line " + std::to_string(line_no) + ": expected 'x,phase'");
    }
    if (!std::isfinite(x) || !std::isfinite(ph)) {
      throw ParseError("phase profile line " + std::to_string(line_no) + ": non-finite value");
    }
    xs.push_back(x);
    phases.push_back(ph);
  }
  if (xs.size() < 2) throw ParseError("phase profile needs at least two samples");

  const double dx = xs[1] - xs[0];
  if (!(dx > 0.0)) throw ParseError("phase profile x column must be increasing");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double expected = xs[0] + static_cast<double>(i) * dx;
    if (std::abs(xs[i] - expected) > 1e-6 * dx) {
      throw ParseError("phase profile x column is not uniformly spaced at row " + std::to_string(i));
    }
  }
  return {xs[0], dx, std::move(phases)};
}

PhaseProfile read_phase_profile_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open phase profile '" + path + "'");
  return read_phase_profile_csv(in);
}

}  // namespace weakphase
