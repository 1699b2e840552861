#pragma once

#include <complex>
#include <vector>

namespace weakphase::detail {

enum class FftDirection { forward, backward };

/// Unnormalised DFT. forward: sum x_n exp(-2 pi i k n / N); backward: exp(+2 pi i k n / N).
std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& in,
                                      FftDirection dir);

}  // namespace weakphase::detail
