#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "rosenblatt/dist.h"
#include "rosenblatt/lrdmix.h"

namespace rosenblatt {

enum class FunctionalKind { mean_h2, correlation, sojourn, quadvar };

std::string_view to_string(FunctionalKind kind);
// Accepts mean|corr|sojourn|quadvar (and the enum spellings).
FunctionalKind parse_functional_kind(std::string_view name);

struct FunctionalSpec {
  FunctionalKind kind = FunctionalKind::mean_h2;
  double a = 0.25;
  std::size_t n = 0;
  std::size_t lag = 0;    // correlation only
  double level = 0.0;     // sojourn only
  CorrKind corr_kind = CorrKind::power;
};

// Throws DomainError when a kind-specific parameter is missing or invalid.
void validate(const FunctionalSpec& fs);

// Z_n = σ_a n^{a-1} Σ (E_k² - 1).
double functional_mean_h2(std::span<const double> e, double a);

// R_{k,n} = σ_a n^{a-1} Σ_{j≤n-k} (E_j E_{j+k} - r_true).
double functional_corr(std::span<const double> e, double a, std::size_t k, double r_true);

// S_{u,n} = σ_a n^{a-1} (Σ 1{|E_j|>u} - 2n(1-Φ(u))) / (uφ(u)).
double functional_sojourn(std::span<const double> e, double a, double u);

// G_n = σ_a n^{a-1} n^{2-a}/(1.04-1.5a) Σ ((ΔX_j)² - n^{a-2}) for a path of n+1 points.
double functional_quadvar(std::span<const double> x, double a);

struct EmpiricalDensity {
  std::vector<double> bin_edges;
  std::vector<double> bin_mass;
  // Gaussian KDE; both empty when the replicates have zero spread.
  std::vector<double> kde_xs;
  std::vector<double> kde_vals;
  std::size_t reps = 0;
  double mean = 0.0;
  double sd = 0.0;
  double skewness = 0.0;
  std::vector<double> values;  // replicate values in replicate order
};

// Histogram (Freedman-Diaconis bins), Silverman-bandwidth KDE and moments.
EmpiricalDensity summarize(std::vector<double> values);

struct McOptions {
  unsigned threads = 1;
  // Every replicate reuses the base seed (degenerate, for testing).
  bool identical_seeds = false;
};

EmpiricalDensity run_monte_carlo(const FunctionalSpec& fs, std::size_t reps,
                                 std::uint64_t seed, const McOptions& opts = {});

// sup_x |F_emp(x) - F(x)| with F evaluated on a 2001-point grid spanning the
// sample and interpolated linearly. For a single value x₀ this is
// max(F(x₀), 1 - F(x₀)).
double ks_distance(std::span<const double> values, const Distribution& dist);

// Two-sample Kolmogorov-Smirnov statistic.
double ks_two_sample(std::span<const double> x, std::span<const double> y);

}  // namespace rosenblatt
