#include "qidm/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace qidm::fourier {

std::vector<std::complex<double>> dft_direct(const std::vector<std::complex<double>>& in) {
  const std::size_t n = in.size();
  std::vector<std::complex<double>> out(n);
  std::vector<std::complex<double>> roots(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double ang = -2.0 * M_PI * static_cast<double>(m) / static_cast<double>(n);
    roots[m] = std::complex<double>(std::cos(ang), std::sin(ang));
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) acc += in[j] * roots[(j * k) % n];
    out[k] = acc / static_cast<double>(n);
  }
  return out;
}

std::vector<std::complex<double>> dft_fftw(const std::vector<std::complex<double>>& in) {
  // FFTW planning is not thread-safe.
  static std::mutex plan_mutex;
  const std::size_t n = in.size();
  std::vector<std::complex<double>> out(n);
  fftw_complex* buf = fftw_alloc_complex(n);
  for (std::size_t j = 0; j < n; ++j) {
    buf[j][0] = in[j].real();
    buf[j][1] = in[j].imag();
  }
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    fftw_destroy_plan(plan);
  }
  for (std::size_t k = 0; k < n; ++k)
    out[k] = std::complex<double>(buf[k][0], buf[k][1]) / static_cast<double>(n);
  fftw_free(buf);
  return out;
}

std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& in,
                                      long long span) {
  if (span <= kDirectSummationSpanLimit) return dft_direct(in);
  return dft_fftw(in);
}

}  // namespace qidm::fourier
