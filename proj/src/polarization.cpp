#include "weakphase/polarization.hpp"

#include <cmath>
#include <numbers>

#include "weakphase/errors.hpp"

namespace weakphase {

PolarizationState::PolarizationState(cplx amp_h, cplx amp_v) {
  const double norm = std::sqrt(std::norm(amp_h) + std::norm(amp_v));
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DomainError("polarization state must have finite nonzero norm");
  }
  h_ = amp_h / norm;
  v_ = amp_v / norm;
}

PolarizationState PolarizationState::linear(double angle) {
  return {std::cos(angle), std::sin(angle)};
}

PolarizationState PolarizationState::with_global_phase(double theta) const {
  const cplx phase = std::polar(1.0, theta);
  return {h_ * phase, v_ * phase};
}

cplx DichotomicObservable::expectation(const PolarizationState& bra,
                                       const PolarizationState& ket) const {
  return eig_plus * std::conj(bra.amp_h()) * ket.amp_h() +
         eig_minus * std::conj(bra.amp_v()) * ket.amp_v();
}

cplx inner_product(const PolarizationState& bra, const PolarizationState& ket) {
  return std::conj(bra.amp_h()) * ket.amp_h() + std::conj(bra.amp_v()) * ket.amp_v();
}

WeakValueResult weak_value(const PolarizationState& pre, const PolarizationState& post,
                           const DichotomicObservable& obs) {
  const cplx overlap = inner_product(post, pre);
  if (std::abs(overlap) <= kOverlapFloor) {
    throw DegenerateOverlap("pre- and post-selection are orthogonal; weak value undefined");
  }
  return {obs.expectation(post, pre) / overlap, overlap, std::norm(overlap)};
}

Selection preset_real_wv(double delta) {
  using std::numbers::pi;
  if (delta == 0.0 || !(std::abs(delta) <= pi / 4)) {
    throw DomainError("preset_real_wv: need 0 < |delta| <= pi/4");
  }
  const double a = pi / 4 + delta;
  return {PolarizationState(1.0, 1.0), PolarizationState(std::cos(a), -std::sin(a))};
}

Selection preset_imag_wv(double phi) {
  using std::numbers::pi;
  if (phi == 0.0 || !(std::abs(phi) <= pi / 2)) {
    throw DomainError("preset_imag_wv: need 0 < |phi| <= pi/2");
  }
  const cplx i{0.0, 1.0};
  return {PolarizationState(1.0, i),
          PolarizationState(i * std::polar(1.0, phi), std::polar(1.0, -phi))};
}

PolarizationState rotate_analyzer(const PolarizationState& state, double epsilon) {
  const double c = std::cos(epsilon);
  const double s = std::sin(epsilon);
  return {c * state.amp_h() - s * state.amp_v(), s * state.amp_h() + c * state.amp_v()};
}

}  // namespace weakphase
