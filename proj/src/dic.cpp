#include "weakphase/dic.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cmath>
#include <complex>
#include <numbers>

#include "weakphase/errors.hpp"

namespace weakphase {
namespace {

using cplx = std::complex<double>;
using Vec2 = std::array<cplx, 2>;
using Mat2 = std::array<std::array<cplx, 2>, 2>;

Vec2 act(const Mat2& m, const Vec2& v) {
  return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}

// Projector onto linear polarization at angle theta.
Mat2 linear_polarizer(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {{{c * c, c * s}, {c * s, s * s}}};
}

}  // namespace

double jones_chain_oracle(double phase_a, double phase_b, double analyzer_offset) {
  using std::numbers::pi;
  // Unpolarized light after polarizer I: unit amplitude at 45 degrees.
  const Vec2 input = act(linear_polarizer(pi / 4), Vec2{cplx{std::numbers::sqrt2}, cplx{0.0}});
  const Mat2 sample{{{std::polar(1.0, phase_a), 0.0}, {0.0, std::polar(1.0, phase_b)}}};
  const Vec2 out = act(linear_polarizer(3 * pi / 4 + analyzer_offset), act(sample, input));
  return std::norm(out[0]) + std::norm(out[1]);
}

DicImage dic_image(const PhaseProfile& profile, double shear, double analyzer_offset) {
  if (!(profile.dx > 0.0) || !std::isfinite(profile.dx)) {
    throw DomainError("dic_image: dx must be finite and > 0");
  }
  if (!(std::abs(analyzer_offset) < 0.3)) {
    throw DomainError("dic_image: |analyzer_offset| must be < 0.3");
  }
  const double steps = shear / profile.dx;
  const double rounded = std::round(steps);
  if (!std::isfinite(steps) || std::abs(steps - rounded) > 1e-9 * std::max(1.0, std::abs(steps))) {
    throw ShearNotOnGrid("dic_image: shear is not an integer multiple of dx");
  }
  const auto offset = static_cast<std::ptrdiff_t>(rounded);
  const auto n = static_cast<std::ptrdiff_t>(profile.phases.size());

  DicImage img{profile.x_start, profile.dx, std::vector<double>(profile.phases.size(), 0.0),
               std::vector<std::uint8_t>(profile.phases.size(), 0)};
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (!std::isfinite(profile.phases[i])) throw DomainError("dic_image: non-finite phase");
    const std::ptrdiff_t j = i + offset;
    if (j < 0 || j >= n) continue;
    img.intensity[i] = jones_chain_oracle(profile.phases[i], profile.phases[j], analyzer_offset);
    img.valid[i] = 1;
  }
  return img;
}

}  // namespace weakphase
