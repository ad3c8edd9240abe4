#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rosenblatt/spectrum.h"

namespace rosenblatt {

struct QuadOptions {
  // Initial upper limit of the Fourier integral. Doubled (up to
  // kMaxZmaxDoublings times) until |φ_ε(zmax)| < kCharfnCutoff; if φ_ε still
  // has not decayed, the remainder is integrated as an oscillatory tail.
  double zmax = 20.0;
  // Absolute tolerance per density/CDF point.
  double tol = 1e-9;
};

inline constexpr double kCharfnCutoff = 1e-8;
inline constexpr int kMaxZmaxDoublings = 6;

// Density by Fourier inversion (1/π)∫_0^∞ Re(φ_ε(z)e^{-izx})dz, clipped at 0.
double density(const Spectrum& spec, double x, const QuadOptions& quad = {});

// Gil-Pelaez: 1/2 - (1/π)∫_0^∞ Im(φ_ε(z)e^{-izx})/z dz, clipped to [0, 1].
double cdf(const Spectrum& spec, double x, const QuadOptions& quad = {});

// x with |cdf(x) - p| ≤ 1e-6 (bracket doubling, then bisection).
double quantile(const Spectrum& spec, double p, const QuadOptions& quad = {});

struct DensityTable {
  std::vector<double> xs;
  std::vector<double> pdf;
  std::vector<double> cdf;
  double a = 0.0;
  std::size_t M = 0;
  double quad_zmax = 0.0;
  double quad_tol = 0.0;
  // Smallest inverted density value before clipping at zero.
  double min_raw_pdf = 0.0;
};

/// Inversion engine for repeated evaluation against one spectrum.
///
/// φ_ε is tabulated once on composite Gauss-Legendre panels covering
/// [0, zmax]; each pdf/cdf call then costs one pass over the cached nodes.
/// Points with |x| beyond the resolved band fall back to the adaptive route.
class Distribution {
 public:
  explicit Distribution(Spectrum spec, QuadOptions quad = {});

  double pdf(double x) const;
  double cdf(double x) const;
  double quantile(double p) const;
  DensityTable table(std::span<const double> xs) const;

  const Spectrum& spectrum() const noexcept { return spec_; }
  double zmax() const noexcept { return zmax_; }
  bool has_oscillatory_tail() const noexcept { return tail_; }

 private:
  double raw_pdf(double x) const;
  double raw_cdf(double x) const;

  Spectrum spec_;
  QuadOptions quad_;
  double zmax_ = 0.0;
  bool tail_ = false;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<std::complex<double>> phi_;
};

DensityTable density_table(const Spectrum& spec, std::span<const double> xs,
                           const QuadOptions& quad = {});

// CSV with columns x,pdf,log_pdf,cdf.
std::string density_table_csv(const DensityTable& table);

// V_ε = σ_ε ε₀ + Σ_{n≤M} λ_n(ε_n² - 1); draw i depends only on (seed, i).
double sample_one(const Spectrum& spec, std::uint64_t seed, std::uint64_t index);

std::vector<double> sample(const Spectrum& spec, std::uint64_t seed, std::size_t count,
                           unsigned threads = 1);

// Upper limit actually used for the inversion integral (after doubling).
double effective_zmax(const Spectrum& spec, const QuadOptions& quad = {});

}  // namespace rosenblatt
