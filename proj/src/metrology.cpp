#include "weakphase/metrology.hpp"

#include <cmath>
#include <numbers>

#include "weakphase/errors.hpp"

namespace weakphase {
namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be finite and > 0");
  }
}

double grid_mid(const TimeGrid& grid) { return 0.5 * (grid.t_start + grid.t_end()); }

bool dark_port_usable(double p, const ErrorBudget& b) {
  return p > b.postselect_margin * b.epsilon * b.epsilon;
}

}  // namespace

void ErrorBudget::validate() const {
  require_positive(epsilon, "epsilon");
  require_positive(delta_t, "delta_t");
  require_positive(delta_omega, "delta_omega");
  require_positive(omega_carrier, "omega_carrier");
  require_positive(sigma, "sigma");
  require_positive(n_photons, "n_photons");
  require_positive(postselect_margin, "postselect_margin");
  if (!(epsilon < 0.1)) throw DomainError("epsilon must be < 0.1 (small-angle regime)");
}

SchemeOutcome run_real_wv_scheme(double tau, double delta, const ErrorBudget& budget,
                                 const TimeGrid& grid) {
  budget.validate();
  if (!(tau >= 0.0)) throw DomainError("tau must be >= 0");
  const Selection sel = preset_real_wv(delta);
  const WeakValueResult wv = weak_value(sel.pre, sel.post);

  const Envelope g = make_gaussian(budget.sigma, grid, grid_mid(grid));
  const Envelope f = postselect_envelope(sel.pre, sel.post, g, tau);

  SchemeOutcome out;
  out.postselect_prob = wv.p_postselect;
  out.tau_min = tau_min_real(budget);
  try {
    out.observable_shift = centroid_t(f) - centroid_t(g);
  } catch (const EmptySpectrum& e) {
    out.diagnostic = e.what();
    return out;
  }
  out.resolvable = std::abs(out.observable_shift) > budget.delta_t &&
                   dark_port_usable(out.postselect_prob, budget);
  return out;
}

SchemeOutcome run_imag_wv_scheme(double tau, double phi, const ErrorBudget& budget,
                                 const TimeGrid& grid) {
  budget.validate();
  if (!(tau >= 0.0)) throw DomainError("tau must be >= 0");
  const Selection sel = preset_imag_wv(phi);
  const WeakValueResult wv = weak_value(sel.pre, sel.post);

  const Envelope g = make_gaussian(budget.sigma, grid, grid_mid(grid));
  const Envelope f = postselect_envelope(sel.pre, sel.post, g, tau);

  SchemeOutcome out;
  out.postselect_prob = wv.p_postselect;
  out.tau_min = tau_min_imag(budget);
  try {
    out.observable_shift = centroid(dft_spectrum(f)) - centroid(dft_spectrum(g));
  } catch (const EmptySpectrum& e) {
    out.diagnostic = e.what();
    return out;
  }
  out.resolvable = std::abs(out.observable_shift) > budget.delta_omega &&
                   dark_port_usable(out.postselect_prob, budget);
  return out;
}

InterferometryOutcome run_interferometry(double tau, const ErrorBudget& budget) {
  budget.validate();
  if (!(tau >= 0.0)) throw DomainError("tau must be >= 0");
  const double phase = budget.omega_carrier * tau;

  // 45 degree input through the delay element diag(e^{-i w tau}, e^{+i w tau}).
  const PolarizationState input = PolarizationState::linear(std::numbers::pi / 4);
  const cplx h = input.amp_h() * std::polar(1.0, -phase);
  const cplx v = input.amp_v() * std::polar(1.0, phase);

  // Circular analyzer: D1 <- (H + iV)/sqrt2, D2 <- (H - iV)/sqrt2.
  const cplx i{0.0, 1.0};
  const double r = 1.0 / std::numbers::sqrt2;
  const cplx p1 = r * (h + std::conj(i) * v);
  const cplx p2 = r * (h + i * v);

  InterferometryOutcome res;
  const double n = budget.n_photons;
  res.intensity_d1 = n * std::norm(p1);
  res.intensity_d2 = n * std::norm(p2);
  // |p1|^2 - |p2|^2 = 2 Im(v conj(h)), free of cancellation for small phases.
  res.difference = 2.0 * n * std::abs((v * std::conj(h)).imag());
  res.linearized = 2.0 * n * phase;

  res.outcome.observable_shift = res.difference;
  res.outcome.postselect_prob = 1.0;
  res.outcome.tau_min = tau_min_interf(budget);
  res.outcome.resolvable = phase > budget.epsilon;
  return res;
}

double tau_min_real(const ErrorBudget& b) {
  require_positive(b.epsilon, "epsilon");
  require_positive(b.delta_t, "delta_t");
  return b.epsilon * b.delta_t;
}

double tau_min_imag(const ErrorBudget& b) {
  require_positive(b.epsilon, "epsilon");
  require_positive(b.sigma, "sigma");
  require_positive(b.delta_omega, "delta_omega");
  return b.epsilon * b.sigma * b.sigma * b.delta_omega / 2.0;
}

double tau_min_interf(const ErrorBudget& b) {
  require_positive(b.epsilon, "epsilon");
  require_positive(b.omega_carrier, "omega_carrier");
  return b.epsilon / b.omega_carrier;
}

ComparisonReport compare_schemes(const ErrorBudget& budget) {
  ComparisonReport r;
  r.tau_min_real = tau_min_real(budget);
  r.tau_min_imag = tau_min_imag(budget);
  r.tau_min_interf = tau_min_interf(budget);
  r.ratio_interf_over_imag = r.tau_min_interf / r.tau_min_imag;
  r.ratio_real_over_interf = r.tau_min_real / r.tau_min_interf;
  return r;
}

double omega_from_wavelength(double lambda) {
  require_positive(lambda, "wavelength");
  return 2.0 * std::numbers::pi * kSpeedOfLight / lambda;
}

double domega_from_dlambda(double lambda, double dlambda) {
  require_positive(lambda, "wavelength");
  require_positive(dlambda, "delta_lambda");
  return 2.0 * std::numbers::pi * kSpeedOfLight * dlambda / (lambda * lambda);
}

}  // namespace weakphase
