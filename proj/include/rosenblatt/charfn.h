#pragma once

#include <complex>
#include <string_view>
#include <utility>

#include "rosenblatt/spectrum.h"

namespace rosenblatt {

/// Equivalent series/integral forms of ln E[e^{-sV}] for the truncated law.
///
/// `direct` is the defining log form; the other four are expansions of the
/// logarithm that converge on the whole half-line s > -1/(2λ₁):
///   domain_scaled      odd powers of λs/(1+λs)
///   ramanujan          Ramanujan's 1/ln x + 1/(1-x) series
///   ramanujan_bradley  Σ 2^{k-1}(x^{2^{-k}} - 1)²
///   integral           ∫_0^s Σ 2λ²u/(2λu+1) du by adaptive quadrature
enum class LogLTRepresentation { direct, domain_scaled, ramanujan, ramanujan_bradley, integral };

inline constexpr LogLTRepresentation kAllRepresentations[] = {
    LogLTRepresentation::direct, LogLTRepresentation::domain_scaled,
    LogLTRepresentation::ramanujan, LogLTRepresentation::ramanujan_bradley,
    LogLTRepresentation::integral};

std::string_view to_string(LogLTRepresentation rep);

// ln φ_LT,ε(s) = s²σ_ε²/2 - Σ_{n≤M}(½ln(1+2λ_n s) - λ_n s).
// Throws DomainError when s ≤ -1/(2λ₁).
double log_laplace(const Spectrum& spec, double s,
                   LogLTRepresentation rep = LogLTRepresentation::direct);

// φ_ε(z) = exp(-z²σ_ε²/2 - Σ_{n≤M}(½ln(1-2iλ_n z) + iλ_n z)).
std::complex<double> charfn_eps(const Spectrum& spec, double z);

// Raw moments of the truncated law. `m3` includes the closed-form tail of
// Σλ³ unless disabled; `m3_truncated` never does.
struct MomentSet {
  double m1 = 0.0;
  double m2 = 1.0;
  double m3 = 0.0;
  double m3_truncated = 0.0;
  double m4 = 3.0;
};

MomentSet moments(const Spectrum& spec, bool complete_tail = true);

// m(x) = (1/(2x)) Σ_{n≤M} exp(-x/(2λ_n)).
double levy_density(const Spectrum& spec, double x);

/// Both sides of the Stein identity E[V f(V)] = E∫(f(V+x) - f(V)) m̃(x) dx
/// (plus σ_ε² E f'(V) for the Gaussian part) with f(x) = x^k, k ∈ {1,2,3}.
///
/// lhs is E V^{k+1} from the cumulants; rhs expands f(V+x) - f(V) binomially
/// and integrates each power of x against the Lévy kernel in closed form.
std::pair<double, double> stein_moment_residual(const Spectrum& spec, int k);

}  // namespace rosenblatt
