#pragma once

// Special functions used throughout the library. All functions are pure and
// safe to call concurrently.

namespace rosenblatt::specfn {

// ln Γ(x) for x > 0.
double ln_gamma(double x);

// Γ(u)Γ(v)/Γ(u+v) for u, v > 0.
double beta(double u, double v);

double std_normal_pdf(double x) noexcept;
double std_normal_cdf(double x) noexcept;

/// Mittag-Leffler function evaluated on the negative power axis, E_a(-t^a),
/// for 0 < a < 1 and t >= 0.
///
/// Uses the power series while t^a <= 1 and the Laplace-integral
/// representation against the Lamperti density otherwise.
double mittag_leffler_neg(double a, double t);

// Lamperti density sin(aπ)/π · x^{a-1} / (1 + 2cos(aπ)x^a + x^{2a}).
double lamperti_density(double a, double x);

// Lamperti quantile (sin(uaπ)/sin((1-u)aπ))^{1/a}, clamped to kLampertiClamp.
double lamperti_quantile(double a, double u);

inline constexpr double kLampertiClamp = 1e25;

// Quantile of the Gamma(shape, 1) distribution.
double gamma_quantile(double shape, double u);

// Regularized lower incomplete gamma P(shape, x); the CDF inverted by gamma_quantile.
double gamma_cdf(double shape, double x);

namespace detail {

// Both routes of mittag_leffler_neg, exposed so they can be checked against
// each other on their overlap.
double mittag_leffler_series(double a, double t);
double mittag_leffler_integral(double a, double t);

}  // namespace detail

}  // namespace rosenblatt::specfn
