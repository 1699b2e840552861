#include "weakphase/pointer.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fourier.hpp"
#include "weakphase/errors.hpp"

namespace weakphase {
namespace {

using std::numbers::pi;

cplx gaussian_amp(const GaussianShape& g, cplx t_rel) {
  const cplx u = t_rel / (2.0 * g.sigma);
  return g.amplitude * std::exp(-(u * u));
}

void require_coverage(const TimeGrid& grid, double center, double sigma, const char* who) {
  const double reach = kCoverageSigmas * sigma;
  const double slack = 1e-12 * sigma;
  if (!grid.covers(center - reach + slack, center + reach - slack)) {
    throw GridTooNarrow(std::string(who) + ": grid [" + std::to_string(grid.t_start) + ", " +
                        std::to_string(grid.t_end()) + "] does not cover center +- 8 sigma");
  }
}

// Trapezoid weight of sample i out of n.
double trap_weight(std::size_t i, std::size_t n) {
  return (i == 0 || i + 1 == n) ? 0.5 : 1.0;
}

// Angular frequency of FFT bin k in natural (unshifted) order.
double bin_frequency(std::size_t k, std::size_t n, double dt) {
  const auto kk = static_cast<double>(k);
  const auto nn = static_cast<double>(n);
  const double signed_k = (2 * k < n) ? kk : kk - nn;
  return 2.0 * pi * signed_k / (nn * dt);
}

Envelope translate_sampled(const Envelope& env, double tau) {
  const std::size_t n = env.amps.size();
  const double total = env.total_probability();
  double edge_mass = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = env.grid.t(i);
    if (t - env.grid.t_start < std::abs(tau) || env.grid.t_end() - t < std::abs(tau)) {
      edge_mass += std::norm(env.amps[i]) * env.grid.dt;
    }
  }
  if (edge_mass > kMassFloor * total) {
    throw GridTooNarrow("translate: envelope has non-negligible weight within |tau| of the grid edge");
  }

  auto spec = detail::fft(env.amps, detail::FftDirection::forward);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = bin_frequency(k, n, env.grid.dt);
    if (2 * k == n) {
      spec[k] *= std::cos(w * tau);  // Nyquist bin stays real-symmetric
    } else {
      spec[k] *= std::polar(1.0, w * tau);
    }
  }
  auto back = detail::fft(spec, detail::FftDirection::backward);
  for (auto& a : back) a /= static_cast<double>(n);
  return {env.grid, std::move(back), std::nullopt};
}

}  // namespace

TimeGrid::TimeGrid(double t_start_, double dt_, std::size_t n_samples_)
    : t_start(t_start_), dt(dt_), n_samples(n_samples_) {
  if (!std::isfinite(t_start) || !std::isfinite(dt) || !(dt > 0.0)) {
    throw DomainError("TimeGrid: dt must be finite and positive");
  }
  if (n_samples < 16) throw DomainError("TimeGrid: need at least 16 samples");
}

TimeGrid TimeGrid::centered(double sigma, std::size_t n_samples, double half_span_sigmas,
                            double center) {
  if (!(sigma > 0.0) || !(half_span_sigmas > 0.0) || n_samples < 16) {
    throw DomainError("TimeGrid::centered: sigma, span must be positive and n >= 16");
  }
  const double half = half_span_sigmas * sigma;
  return {center - half, 2.0 * half / static_cast<double>(n_samples - 1), n_samples};
}

double Envelope::total_probability() const {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return s * grid.dt;
}

double Spectrum::total_probability() const {
  double s = 0.0;
  for (double v : vals) s += v;
  return s * dw;
}

Envelope make_gaussian(double sigma, const TimeGrid& grid, double center) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("make_gaussian: sigma must be > 0");
  require_coverage(grid, center, sigma, "make_gaussian");

  GaussianShape shape{sigma, center, 1.0};
  std::vector<cplx> amps(grid.n_samples);
  double mass = 0.0;
  for (std::size_t i = 0; i < grid.n_samples; ++i) {
    amps[i] = gaussian_amp(shape, grid.t(i) - center);
    mass += std::norm(amps[i]);
  }
  shape.amplitude = 1.0 / std::sqrt(mass * grid.dt);
  for (auto& a : amps) a *= shape.amplitude;
  return {grid, std::move(amps), shape};
}

Envelope translate(const Envelope& env, double tau) {
  if (tau == 0.0) return env;
  if (!env.gaussian) return translate_sampled(env, tau);

  GaussianShape shape = *env.gaussian;
  shape.center -= tau;
  require_coverage(env.grid, shape.center, shape.sigma, "translate");
  std::vector<cplx> amps(env.grid.n_samples);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    amps[i] = gaussian_amp(shape, env.grid.t(i) - shape.center);
  }
  return {env.grid, std::move(amps), shape};
}

Envelope postselect_envelope(const PolarizationState& pre, const PolarizationState& post,
                             const Envelope& env, double tau) {
  const cplx c_plus = std::conj(post.amp_h()) * pre.amp_h();
  const cplx c_minus = std::conj(post.amp_v()) * pre.amp_v();
  const Envelope g_plus = translate(env, tau);
  const Envelope g_minus = translate(env, -tau);

  std::vector<cplx> amps(env.amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    amps[i] = c_plus * g_plus.amps[i] + c_minus * g_minus.amps[i];
  }
  return {env.grid, std::move(amps), std::nullopt};
}

Envelope weak_approx_envelope(cplx overlap, cplx a_w, const Envelope& env, double tau) {
  if (!env.gaussian) throw NotGaussian("weak_approx_envelope: envelope has no Gaussian form");
  const GaussianShape& shape = *env.gaussian;
  if (std::abs(tau * a_w) >= 0.5 * shape.sigma) {
    throw ApproximationOutOfRange("weak_approx_envelope: |tau * A_w| >= sigma / 2");
  }
  const cplx shift = tau * a_w;
  require_coverage(env.grid, shape.center - shift.real(), shape.sigma, "weak_approx_envelope");

  std::vector<cplx> amps(env.grid.n_samples);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    amps[i] = overlap * gaussian_amp(shape, env.grid.t(i) - shape.center + shift);
  }
  return {env.grid, std::move(amps), std::nullopt};
}

Envelope weak_approx_envelope(const WeakValueResult& wv, const Envelope& env, double tau) {
  return weak_approx_envelope(wv.overlap, wv.a_w, env, tau);
}

Spectrum dft_spectrum(const Envelope& env) {
  const std::size_t n = env.amps.size();
  const std::size_t half = n / 2;
  const double dt = env.grid.dt;

  // Multiplying by exp(+2 pi i half n / N) moves bin `half` to zero frequency.
  std::vector<cplx> shifted(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx phase;
    if (n % 2 == 0) {
      phase = (i % 2 == 0) ? 1.0 : -1.0;
    } else {
      phase = std::polar(1.0, 2.0 * pi * static_cast<double>(half * i % n) / static_cast<double>(n));
    }
    shifted[i] = env.amps[i] * phase;
  }
  const auto raw = detail::fft(shifted, detail::FftDirection::forward);

  Spectrum s;
  s.dw = 2.0 * pi / (static_cast<double>(n) * dt);
  s.w_start = -static_cast<double>(half) * s.dw;
  s.vals.resize(n);
  const double scale = dt * dt / (2.0 * pi);
  for (std::size_t k = 0; k < n; ++k) s.vals[k] = scale * std::norm(raw[k]);
  return s;
}

double centroid(const Spectrum& s, double reference_probability) {
  const std::size_t n = s.vals.size();
  double mass = 0.0;
  double first = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double w = trap_weight(k, n) * s.vals[k];
    mass += w;
    first += w * s.w(k);
  }
  mass *= s.dw;
  if (!(mass > kMassFloor * reference_probability)) {
    throw EmptySpectrum("centroid: spectral mass below floor (dark port)");
  }
  return first * s.dw / mass;
}

double centroid_t(const Envelope& env, double reference_probability) {
  const std::size_t n = env.amps.size();
  double mass = 0.0;
  double first = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = trap_weight(i, n) * std::norm(env.amps[i]);
    mass += w;
    first += w * env.grid.t(i);
  }
  mass *= env.grid.dt;
  if (!(mass > kMassFloor * reference_probability)) {
    throw EmptySpectrum("centroid_t: intensity below floor (dark port)");
  }
  return first * env.grid.dt / mass;
}

double l2_distance(const Envelope& a, const Envelope& b) {
  if (!(a.grid == b.grid) || a.amps.size() != b.amps.size()) {
    throw GridMismatch("l2_distance: envelopes live on different grids");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.amps.size(); ++i) s += std::norm(a.amps[i] - b.amps[i]);
  return std::sqrt(s * a.grid.dt);
}

}  // namespace weakphase
