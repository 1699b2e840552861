#include "fourier.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace weakphase::detail {
namespace {

// FFTW's planner is not re-entrant; execution on a private plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& in,
                                      FftDirection dir) {
  const int n = static_cast<int>(in.size());
  std::vector<std::complex<double>> out(in.size());
  if (in.empty()) return out;

  std::vector<std::complex<double>> buf = in;
  auto* src = reinterpret_cast<fftw_complex*>(buf.data());
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  const int sign = dir == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD;

  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, src, dst, sign, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw std::runtime_error("fftw: plan creation failed");
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace weakphase::detail
