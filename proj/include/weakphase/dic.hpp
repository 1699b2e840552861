#pragma once

#include <cstdint>
#include <vector>

namespace weakphase {

/// Sample-induced phase on a uniform lateral grid x_i = x_start + i dx.
struct PhaseProfile {
  double x_start = 0.0;
  double dx = 0.0;
  std::vector<double> phases;

  double x(std::size_t i) const noexcept { return x_start + static_cast<double>(i) * dx; }
};

struct DicImage {
  double x_start = 0.0;
  double dx = 0.0;
  std::vector<double> intensity;  // fraction of input intensity, in [0, 1]
  std::vector<std::uint8_t> valid;  // 0 where x + shear falls off the grid
};

/// Dark-port intensity of the DIC chain for one lateral position:
/// 45 degree polarizer -> diag(e^{i phase_a}, e^{i phase_b}) -> analyzer at
/// 135 degrees + analyzer_offset.
double jones_chain_oracle(double phase_a, double phase_b, double analyzer_offset);

/// 1-D DIC image. The H beam samples x, the V beam samples x + shear; `shear`
/// must be an integer multiple of dx (either sign) and |analyzer_offset| < 0.3.
DicImage dic_image(const PhaseProfile& profile, double shear, double analyzer_offset = 0.0);

}  // namespace weakphase
