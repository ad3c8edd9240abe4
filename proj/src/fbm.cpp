#include "rosenblatt/fbm.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <memory>
#include <mutex>
#include <string>

#include "rosenblatt/errors.h"
#include "rosenblatt/rng.h"

namespace rosenblatt {

namespace {

constexpr double kNegEigTol = 1e-10;

// Planner calls are not thread-safe in FFTW; execution on distinct arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwDeleter {
  void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwDeleter>;

FftwBuffer make_buffer(std::size_t m) {
  auto* raw = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * m));
  if (raw == nullptr) {
    throw ResourceError("fbm: FFT buffer allocation failed");
  }
  return FftwBuffer(raw);
}

// In-place forward DFT of length m.
void forward_dft(fftw_complex* data, std::size_t m) {
  fftw_plan plan = nullptr;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(m), data, data, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  if (plan == nullptr) {
    throw ResourceError("fbm: FFT plan creation failed");
  }
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

void require_hurst(double H) {
  if (!(H > 0.0 && H < 1.0)) {
    throw DomainError("fbm: Hurst parameter must lie in (0, 1)");
  }
}

}  // namespace

double fgn_autocov(double H, std::size_t k) {
  require_hurst(H);
  if (k == 0) {
    return 1.0;
  }
  const double h2 = 2.0 * H;
  const double dk = static_cast<double>(k);
  return 0.5 * (std::pow(dk + 1.0, h2) - 2.0 * std::pow(dk, h2) + std::pow(dk - 1.0, h2));
}

FbmGenerator::FbmGenerator(double H, std::size_t n) : H_(H), n_(n) {
  require_hurst(H);
  if (n < 2) {
    throw DomainError("simulate_fbm: n must be at least 2");
  }
  const std::size_t m = 2 * n;
  FftwBuffer buf = make_buffer(m);
  for (std::size_t k = 0; k <= n; ++k) {
    buf[k][0] = fgn_autocov(H, k);
    buf[k][1] = 0.0;
  }
  for (std::size_t k = n + 1; k < m; ++k) {
    buf[k][0] = buf[m - k][0];
    buf[k][1] = 0.0;
  }
  forward_dft(buf.get(), m);
  double max_eig = 0.0;
  min_eig_ = buf[0][0];
  for (std::size_t k = 0; k < m; ++k) {
    max_eig = std::max(max_eig, buf[k][0]);
    min_eig_ = std::min(min_eig_, buf[k][0]);
  }
  if (min_eig_ < -kNegEigTol * max_eig) {
    throw NumericalError("fbm: circulant embedding is not nonnegative definite (min eigenvalue " +
                             std::to_string(min_eig_) + ")",
                         min_eig_);
  }
  if (min_eig_ < 0.0) {
    std::clog << "warning: fbm: clipping circulant eigenvalues down to " << min_eig_
              << " to zero\n";
  }
  amp_.resize(m);
  const double dm = static_cast<double>(m);
  for (std::size_t k = 0; k < m; ++k) {
    amp_[k] = std::sqrt(std::max(buf[k][0], 0.0) / dm);
  }
}

std::vector<double> FbmGenerator::increments(std::uint64_t seed) const {
  const std::size_t m = amp_.size();
  FftwBuffer buf = make_buffer(m);
  rng::StdNormal normal(rng::derive_seed(seed, 3));
  for (std::size_t k = 0; k < m; ++k) {
    const double re = normal();
    const double im = normal();
    buf[k][0] = amp_[k] * re;
    buf[k][1] = amp_[k] * im;
  }
  forward_dft(buf.get(), m);
  std::vector<double> inc(n_);
  const double scale = std::pow(static_cast<double>(n_), -H_);
  for (std::size_t j = 0; j < n_; ++j) {
    inc[j] = scale * buf[j][0];
  }
  return inc;
}

std::vector<double> FbmGenerator::path(std::uint64_t seed) const {
  const std::vector<double> inc = increments(seed);
  std::vector<double> x(n_ + 1);
  x[0] = 0.0;
  for (std::size_t j = 0; j < n_; ++j) {
    x[j + 1] = x[j] + inc[j];
  }
  return x;
}

std::vector<double> simulate_fbm(double H, std::size_t n, std::uint64_t seed) {
  return FbmGenerator(H, n).path(seed);
}

}  // namespace rosenblatt
