#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace rosenblatt {

// Unit-lag autocovariance of fractional Gaussian noise:
// ½(|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}).
double fgn_autocov(double H, std::size_t k);

/// Exact fBm sampler on the grid {j/n} of [0, 1] by circulant embedding of
/// the fGn covariance into a circulant of size 2n. The square roots of the
/// circulant eigenvalues are computed once per (H, n) and reused.
class FbmGenerator {
 public:
  FbmGenerator(double H, std::size_t n);

  // X(0) = 0, X(1/n), ..., X(1); deterministic in seed.
  std::vector<double> path(std::uint64_t seed) const;

  // The n increments X(j/n) - X((j-1)/n).
  std::vector<double> increments(std::uint64_t seed) const;

  double hurst() const noexcept { return H_; }
  std::size_t n() const noexcept { return n_; }
  // Smallest circulant eigenvalue before clipping.
  double min_eigenvalue() const noexcept { return min_eig_; }

 private:
  double H_;
  std::size_t n_;
  double min_eig_ = 0.0;
  std::vector<double> amp_;  // sqrt(λ_k / 2n)
};

std::vector<double> simulate_fbm(double H, std::size_t n, std::uint64_t seed);

}  // namespace rosenblatt
