#pragma once

#include <complex>
#include <cstddef>
#include <vector>

// Thin FFTW wrappers. Plans are cached per size and created under a lock,
// so every function here may be called concurrently.
namespace brownspec::fft {

using cvec = std::vector<std::complex<double>>;

// Unnormalized forward DFT, X_j = sum_k x_k exp(-2 pi i jk/n).
cvec forward(const cvec& x);
// Unnormalized inverse DFT, x_k = sum_j X_j exp(+2 pi i jk/n).
cvec backward(const cvec& x);
// Forward DFT of a real sequence, returns the n/2+1 non-negative frequency bins.
cvec forward_real(const std::vector<double>& x);

// Sums s_k = sum_i x_i x_{i+k} for k = 0..max_lag (zero-padded, no wraparound).
std::vector<double> autocorrelation_sums(const double* x, std::size_t n, std::size_t max_lag);

// First n terms of the causal convolution (a * b)_k = sum_{j<=k} a_j b_{k-j}.
std::vector<double> causal_convolution(const std::vector<double>& a, const std::vector<double>& b,
                                       std::size_t n);

// Smallest 2^a 3^b 5^c >= n.
std::size_t good_size(std::size_t n);

} // namespace brownspec::fft
