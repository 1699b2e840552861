#pragma once

#include <complex>
#include <utility>

namespace weakphase {

using cplx = std::complex<double>;

/// Pure polarization state of the system qubit in the H/V basis.
///
/// Index 0 is H (observable eigenvalue +1), index 1 is V (eigenvalue -1).
/// This convention is used by every module. Amplitudes are normalised on
/// construction; no global-phase canonicalisation is applied.
class PolarizationState {
 public:
  PolarizationState(cplx amp_h, cplx amp_v);

  static PolarizationState horizontal() { return {1.0, 0.0}; }
  static PolarizationState vertical() { return {0.0, 1.0}; }
  /// Linear polarization at `angle` from H: (cos, sin).
  static PolarizationState linear(double angle);

  cplx amp_h() const noexcept { return h_; }
  cplx amp_v() const noexcept { return v_; }

  PolarizationState with_global_phase(double theta) const;

 private:
  cplx h_;
  cplx v_;
};

/// A = |H><H| - |V><V|, fixed diagonal in the H/V basis.
struct DichotomicObservable {
  static constexpr double eig_plus = 1.0;
  static constexpr double eig_minus = -1.0;

  cplx expectation(const PolarizationState& bra, const PolarizationState& ket) const;
};

struct WeakValueResult {
  cplx a_w;
  cplx overlap;         // <post|pre>
  double p_postselect;  // |<post|pre>|^2
};

/// Pre-selection and post-selection pair.
struct Selection {
  PolarizationState pre;
  PolarizationState post;
};

inline constexpr double kOverlapFloor = 1e-12;

/// <bra|ket>, conjugate-linear in `bra`.
cplx inner_product(const PolarizationState& bra, const PolarizationState& ket);

/// A_w = <post|A|pre> / <post|pre>. Throws DegenerateOverlap if |<post|pre>| <= kOverlapFloor.
WeakValueResult weak_value(const PolarizationState& pre, const PolarizationState& post,
                           const DichotomicObservable& obs = {});

/// pre = (H+V)/sqrt2, post = cos(pi/4+delta) H - sin(pi/4+delta) V.
/// Gives A_w = -cot(delta) (purely real) and p = sin^2(delta).
Selection preset_real_wv(double delta);

/// pre = (H+iV)/sqrt2, post = (i e^{i phi} H + e^{-i phi} V)/sqrt2.
/// Gives A_w = i cot(phi) (purely imaginary) and p = sin^2(phi).
Selection preset_imag_wv(double phi);

/// Real rotation by `epsilon` in the H/V plane (analyzer misalignment).
PolarizationState rotate_analyzer(const PolarizationState& state, double epsilon);

}  // namespace weakphase
