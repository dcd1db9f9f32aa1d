#pragma once

#include <complex>
#include <vector>

namespace qidm::fourier {

// Normalized forward transform: out[n] = (1/N) sum_j in[j] e^{-2 pi i j n / N}.
// Two routes with the same contract; equivalence-tested against each other.
std::vector<std::complex<double>> dft_direct(const std::vector<std::complex<double>>& in);
std::vector<std::complex<double>> dft_fftw(const std::vector<std::complex<double>>& in);

// Route selection used by the lattice operations: direct summation below the
// span threshold, FFT above.
std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& in,
                                      long long span);

constexpr long long kDirectSummationSpanLimit = 64;

}  // namespace qidm::fourier
