#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace rosenblatt {

// Which coefficient the second term of the eigenvalue approximation uses.
// `standard` is (5/4)·a^{1.05}; `swapped` is 1.05·a^{5/4}, kept for comparison.
enum class EigenFormula { standard, swapped };

/// Truncated spectrum of the Riesz operator with kernel σ_a|x-u|^{-a} on (0,1).
///
/// `lambdas[n-1]` approximates the n-th eigenvalue; `sigma_eps2` is the
/// variance of the Gaussian term that stands in for the discarded tail, so
/// that 2Σλ² + sigma_eps2 = 1 unless the clamp at zero was hit.
struct Spectrum {
  double a = 0.0;
  std::vector<double> lambdas;
  double sigma_eps2 = 0.0;
  bool clamped = false;

  std::size_t M() const noexcept { return lambdas.size(); }
  double lambda_max() const noexcept { return lambdas.empty() ? 0.0 : lambdas.front(); }
  double sigma_eps() const;

  // Σ_{n≤M} λ_n^k over the stored eigenvalues.
  double power_sum(int k) const;
};

// √((1-2a)(1-a)/2), defined for 0 ≤ a ≤ 1/2.
double sigma_a(double a);

// Leading asymptotic constant C_a of λ_{a,n} ~ C_a n^{a-1}.
double eig_constant(double a);

double eig_approx(double a, std::size_t n, EigenFormula formula = EigenFormula::standard);

// a ∈ [0, 1/2]; a = 0 and a = 1/2 give the chi-square and Gaussian limits.
Spectrum build_spectrum(double a, std::size_t M, EigenFormula formula = EigenFormula::standard);

// Closed-form Σ_{n≥1} λ_{a,n}^k for k ∈ {2, 3}.
double lambda_pow_sum_exact(double a, int k);

enum class TailRule {
  // Σ_{n=M+1}^{horizon} eig_approx(a,n)³; matches the tabulated M_ε values.
  truncated_horizon,
  // closed-form Σλ³ minus the partial sum of approximated eigenvalues.
  closed_form,
};

struct ChooseMOptions {
  TailRule rule = TailRule::truncated_horizon;
  std::size_t horizon = 50000;
  std::size_t cap = 1000000;
};

// Smallest M with tail_3(M) ≤ eps. Throws ResourceError when M would exceed the cap.
std::size_t choose_M(double a, double eps, const ChooseMOptions& opts = {});

// tail_3(M) under the given rule (floored at zero).
double tail3(double a, std::size_t M, const ChooseMOptions& opts = {});

std::string spectrum_to_csv(const Spectrum& spec);
std::string spectrum_to_json(const Spectrum& spec);

}  // namespace rosenblatt
