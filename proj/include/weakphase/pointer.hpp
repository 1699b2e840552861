#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "weakphase/polarization.hpp"

namespace weakphase {

// Sign conventions, fixed here for the whole library:
//  * translate(env, tau) returns g(t + tau), so the H (+1) branch of the
//    coupling carries g(t + tau) and its centroid moves by -tau.
//  * Fourier transform g(w) = integral g(t) exp(-i w t) dt. With the
//    labelling above this gives F(w) = sin^2(w tau - phi) |g(w)|^2 for the
//    imaginary-weak-value selection.

/// Uniform sampling grid t_i = t_start + i * dt.
struct TimeGrid {
  double t_start = 0.0;
  double dt = 0.0;
  std::size_t n_samples = 0;

  TimeGrid(double t_start, double dt, std::size_t n_samples);

  /// Grid centred on `center`, spanning +-half_span_sigmas * sigma.
  static TimeGrid centered(double sigma, std::size_t n_samples = 1u << 14,
                           double half_span_sigmas = 16.0, double center = 0.0);

  double t(std::size_t i) const noexcept { return t_start + static_cast<double>(i) * dt; }
  double t_end() const noexcept { return t(n_samples - 1); }
  bool covers(double lo, double hi) const noexcept { return t_start <= lo && t_end() >= hi; }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

/// Analytic description attached to envelopes that are exactly C exp(-((t-center)/2 sigma)^2).
struct GaussianShape {
  double sigma;
  double center;
  double amplitude;  // C, real and positive
};

/// Complex pointer amplitude; sum |amp|^2 dt is a probability.
struct Envelope {
  TimeGrid grid;
  std::vector<cplx> amps;
  std::optional<GaussianShape> gaussian;

  double total_probability() const;
};

/// Intensity density on a uniform angular-frequency grid w_k = w_start + k dw.
struct Spectrum {
  double w_start = 0.0;
  double dw = 0.0;
  std::vector<double> vals;

  double w(std::size_t k) const noexcept { return w_start + static_cast<double>(k) * dw; }
  double total_probability() const;
};

inline constexpr double kCoverageSigmas = 8.0;
inline constexpr double kMassFloor = 1e-12;

Envelope make_gaussian(double sigma, const TimeGrid& grid, double center = 0.0);

/// g(t + tau). Gaussians use the analytic form; anything else a DFT phase ramp.
Envelope translate(const Envelope& env, double tau);

/// Exact post-selected pointer f = (conj(mu) alpha) g(t+tau) + (conj(nu) beta) g(t-tau).
/// Not renormalised: its total probability is the post-selection success probability.
Envelope postselect_envelope(const PolarizationState& pre, const PolarizationState& post,
                             const Envelope& env, double tau);

/// <post|pre> g(t + tau a_w), the exponentiated weak-value form, for Gaussian `env`.
Envelope weak_approx_envelope(cplx overlap, cplx a_w, const Envelope& env, double tau);
Envelope weak_approx_envelope(const WeakValueResult& wv, const Envelope& env, double tau);

/// |g(w)|^2 / (2 pi) on a zero-centred frequency axis, so that sum vals dw = sum |amp|^2 dt.
Spectrum dft_spectrum(const Envelope& env);

/// Intensity-weighted mean frequency, trapezoid rule. Throws EmptySpectrum when the
/// mass is <= kMassFloor * reference_probability.
double centroid(const Spectrum& s, double reference_probability = 1.0);
/// Intensity-weighted mean time, trapezoid rule.
double centroid_t(const Envelope& env, double reference_probability = 1.0);

/// sqrt(sum |a - b|^2 dt). Throws GridMismatch for different grids.
double l2_distance(const Envelope& a, const Envelope& b);

}  // namespace weakphase
