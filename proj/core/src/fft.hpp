#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace sphlrd::detail {

/// Bins k = 0..floor(T/2) of sum_{s=0}^{T-1} x_s exp(-2 pi i k s / T).
std::vector<std::complex<double>> real_dft_half(std::span<const double> x);

/// Full linear convolution (length a.size() + b.size() - 1) via FFT.
std::vector<double> convolve(std::span<const double> a, std::span<const double> b);

/// Smallest 2^i 3^j 5^k >= n.
std::size_t good_fft_size(std::size_t n);

}  // namespace sphlrd::detail
