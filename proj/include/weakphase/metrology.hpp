#pragma once

#include <string>

#include "weakphase/pointer.hpp"

namespace weakphase {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s, exact

/// Prefactor in the textbook estimate dw ~ 2 tau / (sigma^2 phi). Our Gaussian
/// g(t) = C exp(-(t/2 sigma)^2) actually gives |dw| ~ tau / (2 sigma^2 phi);
/// reports carry both so the difference stays visible.
inline constexpr double kStatedImagShiftPrefactor = 2.0;

/// Instrument parameters. All SI: rad, s, rad/s, photon count.
struct ErrorBudget {
  double epsilon = 0.0;        // PBS alignment error
  double delta_t = 0.0;        // detector time resolution
  double delta_omega = 0.0;    // spectrometer resolution
  double omega_carrier = 0.0;  // CW / carrier angular frequency
  double sigma = 0.0;          // pulse width
  double n_photons = 0.0;
  double postselect_margin = 1.0;  // dark port usable iff p > margin * epsilon^2

  /// Throws DomainError unless every field is positive and epsilon < 0.1.
  void validate() const;
};

struct SchemeOutcome {
  double observable_shift = 0.0;  // s (real), rad/s (imaginary), intensity (interferometry)
  double postselect_prob = 0.0;
  bool resolvable = false;
  double tau_min = 0.0;
  std::string diagnostic;  // non-empty when the readout failed numerically
};

struct InterferometryOutcome {
  SchemeOutcome outcome;
  double intensity_d1 = 0.0;
  double intensity_d2 = 0.0;
  double difference = 0.0;   // |I2 - I1|, exact
  double linearized = 0.0;   // 2 N omega tau
};

struct ComparisonReport {
  double tau_min_real = 0.0;
  double tau_min_imag = 0.0;
  double tau_min_interf = 0.0;
  double ratio_interf_over_imag = 0.0;
  double ratio_real_over_interf = 0.0;

  friend bool operator==(const ComparisonReport&, const ComparisonReport&) = default;
};

/// Real weak value, time-of-arrival readout on the dark port.
SchemeOutcome run_real_wv_scheme(double tau, double delta, const ErrorBudget& budget,
                                 const TimeGrid& grid);

/// Imaginary weak value, spectral-centroid readout.
SchemeOutcome run_imag_wv_scheme(double tau, double phi, const ErrorBudget& budget,
                                 const TimeGrid& grid);

/// CW interferometer: 45 degree input, delay tau between H and V, analysis in
/// the circular basis.
InterferometryOutcome run_interferometry(double tau, const ErrorBudget& budget);

double tau_min_real(const ErrorBudget& budget);    // epsilon * delta_t
double tau_min_imag(const ErrorBudget& budget);    // epsilon * sigma^2 * delta_omega / 2
double tau_min_interf(const ErrorBudget& budget);  // epsilon / omega

ComparisonReport compare_schemes(const ErrorBudget& budget);

double omega_from_wavelength(double lambda);
double domega_from_dlambda(double lambda, double dlambda);

}  // namespace weakphase
