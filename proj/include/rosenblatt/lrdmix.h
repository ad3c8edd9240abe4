#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace rosenblatt {

enum class CorrKind { power, mittag_leffler };

std::string_view to_string(CorrKind kind);
CorrKind parse_corr_kind(std::string_view name);

// How the mixture weights are obtained from the breakpoints τ_k.
enum class WeightScheme {
  // b_k = q_{k-1} - q_k (q₀ = 1), renormalised to Σb = 1.
  quantile_gaps,
  // ∫_{τ_k}^{τ_{k-1}} p(x)dx with τ₀ = 4τ₁, not renormalised.
  interval_integrals,
};

/// Finite exponential mixture r(t) ≈ Σ b_k e^{-rate_k t} of a long-memory
/// correlation function that is a Laplace transform of a density p(x).
struct ExpMixture {
  double a = 0.0;
  CorrKind kind = CorrKind::power;
  std::vector<double> weights;
  std::vector<double> rates;
  std::vector<double> quantile_levels;  // q_1..q_M
  std::vector<double> breakpoints;      // τ_1..τ_M

  std::size_t M() const noexcept { return weights.size(); }
};

// ⌈2/a⌉ + 8.
std::size_t mixture_size(double a);

ExpMixture build_mixture(double a, CorrKind kind,
                         WeightScheme scheme = WeightScheme::quantile_gaps);

double mixture_corr(const ExpMixture& mix, double t);

// (1+t)^{-a} or E_a(-t^a).
double target_corr(CorrKind kind, double a, double t);

struct ApproxPoint {
  double t;
  double target;
  double approx;
  double rel_err;
};

struct ApproxReport {
  std::vector<ApproxPoint> points;
  double max_rel_err = 0.0;
};

ApproxReport approx_error_report(const ExpMixture& mix, std::span<const double> grid);

// `count` points log-spaced on [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t count);

/// Stationary Gaussian sequence Σ √b_k X^{(k)} where each X^{(k)} is a unit
/// variance AR(1) with coefficient e^{-rate_k}, started from its stationary
/// law. Component k draws from its own substream keyed by (seed, k), so the
/// output does not depend on `threads`.
std::vector<double> simulate_lrd(const ExpMixture& mix, std::size_t n, std::uint64_t seed,
                                 unsigned threads = 1);

}  // namespace rosenblatt
