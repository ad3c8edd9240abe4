#include "rosenblatt/charfn.h"

#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "charfn_detail.h"
#include "quadrature.h"
#include "rosenblatt/errors.h"

namespace rosenblatt {

namespace {

constexpr double kSeriesIncrement = 1e-15;
constexpr int kSeriesCap = 10000;

// Each helper returns ½ln(1+2λs) - λs for one eigenvalue, i.e. the negated
// contribution of that eigenvalue to ln φ_LT.

double term_direct(double ls) { return 0.5 * std::log1p(2.0 * ls) - ls; }

double term_domain_scaled(double ls) {
  const double y = ls / (1.0 + ls);
  const double y2 = y * y;
  double pw = y * y2;  // y^{2k-1}, starting at k = 2
  double series = 0.0;
  for (int k = 2; k < kSeriesCap; ++k) {
    const double inc = pw / (2.0 * k - 1.0);
    series += inc;
    if (std::abs(inc) < kSeriesIncrement) {
      break;
    }
    pw *= y2;
  }
  return -(ls * ls / (1.0 + ls) - series);
}

// d_k = x^{2^{-k}} - 1 via d_k = d_{k-1} / (1 + sqrt(1 + d_{k-1})), free of
// the cancellation in sqrt(...) - 1.
double next_root_offset(double d) { return d / (1.0 + std::sqrt(1.0 + d)); }

double term_ramanujan(double ls) {
  const double x = 1.0 + 2.0 * ls;
  if (ls == 0.0) {
    return 0.0;
  }
  double d = 2.0 * ls;
  double scale = 1.0;
  double series = 0.0;
  for (int k = 1; k < kSeriesCap; ++k) {
    d = next_root_offset(d);
    scale *= 0.5;
    const double inc = scale / (2.0 + d);
    series += inc;
    if (inc < kSeriesIncrement) {
      break;
    }
  }
  return -(ls * std::log(x) * series);
}

double term_ramanujan_bradley(double ls) {
  double d = 2.0 * ls;
  double scale = 0.5;  // 2^{k-1} at k = 0
  double series = 0.0;
  for (int k = 1; k < kSeriesCap; ++k) {
    d = next_root_offset(d);
    scale *= 2.0;
    const double inc = scale * d * d;
    series += inc;
    if (inc < kSeriesIncrement) {
      break;
    }
  }
  return -0.5 * series;
}

template <class Term>
double sum_terms(const Spectrum& spec, double s, Term term) {
  double acc = 0.0;
  for (auto it = spec.lambdas.rbegin(); it != spec.lambdas.rend(); ++it) {
    acc += term(*it * s);
  }
  return 0.5 * s * s * spec.sigma_eps2 - acc;
}

double log_laplace_integral(const Spectrum& spec, double s) {
  if (s == 0.0) {
    return 0.0;
  }
  const double l1 = spec.lambda_max();
  if (l1 <= 0.0) {
    return 0.5 * s * s * spec.sigma_eps2;
  }
  // With w = ln(1 + 2λ₁u) the pole of the leading term at u = -1/(2λ₁)
  // moves to w = -∞, so the integrand is smooth up to the branch point.
  auto integrand = [&spec, l1](double w) {
    const double u = std::expm1(w) / (2.0 * l1);
    double acc = spec.sigma_eps2 * u;
    for (double l : spec.lambdas) {
      acc += 2.0 * l * l * u / (2.0 * l * u + 1.0);
    }
    return acc * std::exp(w) / (2.0 * l1);
  };
  const double w_end = std::log1p(2.0 * l1 * s);
  const double lo = std::min(0.0, w_end);
  const double hi = std::max(0.0, w_end);
  const double v = detail::integrate_or_throw(integrand, lo, hi, 1e-13, 1e-12, "log_laplace");
  return s > 0.0 ? v : -v;
}

}  // namespace

std::string_view to_string(LogLTRepresentation rep) {
  switch (rep) {
    case LogLTRepresentation::direct:
      return "direct";
    case LogLTRepresentation::domain_scaled:
      return "domain_scaled";
    case LogLTRepresentation::ramanujan:
      return "ramanujan";
    case LogLTRepresentation::ramanujan_bradley:
      return "ramanujan_bradley";
    case LogLTRepresentation::integral:
      return "integral";
  }
  return "unknown";
}

double log_laplace(const Spectrum& spec, double s, LogLTRepresentation rep) {
  if (!std::isfinite(s) || 1.0 + 2.0 * spec.lambda_max() * s <= 0.0) {
    throw DomainError("log_laplace: s must exceed -1/(2*lambda_1)");
  }
  switch (rep) {
    case LogLTRepresentation::direct:
      return sum_terms(spec, s, term_direct);
    case LogLTRepresentation::domain_scaled:
      return sum_terms(spec, s, term_domain_scaled);
    case LogLTRepresentation::ramanujan:
      return sum_terms(spec, s, term_ramanujan);
    case LogLTRepresentation::ramanujan_bradley:
      return sum_terms(spec, s, term_ramanujan_bradley);
    case LogLTRepresentation::integral:
      return log_laplace_integral(spec, s);
  }
  throw UnsupportedError("log_laplace: unknown representation");
}

namespace detail {

CharfnParts charfn_parts(const Spectrum& spec, double z) {
  double log_mod = -0.5 * z * z * spec.sigma_eps2;
  double phase = 0.0;
  for (double l : spec.lambdas) {
    const double t = 2.0 * l * z;
    log_mod -= 0.25 * std::log1p(t * t);
    phase += 0.5 * std::atan(t);
  }
  return {log_mod, phase};
}

double lambda_sum(const Spectrum& spec) {
  return std::accumulate(spec.lambdas.rbegin(), spec.lambdas.rend(), 0.0);
}

}  // namespace detail

std::complex<double> charfn_eps(const Spectrum& spec, double z) {
  const auto parts = detail::charfn_parts(spec, z);
  return std::polar(std::exp(parts.log_modulus), parts.slow_phase - z * detail::lambda_sum(spec));
}

namespace {

struct Cumulants {
  double k2, k3, k4;
};

Cumulants cumulants(const Spectrum& spec) {
  return {2.0 * spec.power_sum(2) + spec.sigma_eps2, 8.0 * spec.power_sum(3),
          48.0 * spec.power_sum(4)};
}

}  // namespace

MomentSet moments(const Spectrum& spec, bool complete_tail) {
  const Cumulants c = cumulants(spec);
  MomentSet m;
  m.m1 = 0.0;
  m.m2 = c.k2;
  m.m3_truncated = c.k3;
  m.m3 = complete_tail ? 8.0 * lambda_pow_sum_exact(spec.a, 3) : c.k3;
  m.m4 = c.k4 + 3.0 * c.k2 * c.k2;
  return m;
}

double levy_density(const Spectrum& spec, double x) {
  if (!(x > 0.0)) {
    throw DomainError("levy_density: x must be positive");
  }
  double acc = 0.0;
  for (auto it = spec.lambdas.rbegin(); it != spec.lambdas.rend(); ++it) {
    if (*it > 0.0) {
      acc += std::exp(-x / (2.0 * *it));
    }
  }
  return acc / (2.0 * x);
}

std::pair<double, double> stein_moment_residual(const Spectrum& spec, int k) {
  if (k < 1 || k > 3) {
    throw UnsupportedError("stein_moment_residual: k must be 1, 2 or 3");
  }
  const Cumulants c = cumulants(spec);
  // Raw moments E V^0..E V^4.
  const std::array<double, 5> mom = {1.0, 0.0, c.k2, c.k3, c.k4 + 3.0 * c.k2 * c.k2};
  const double lhs = mom[static_cast<std::size_t>(k + 1)];

  // ∫_0^∞ x^j · ½Σexp(-x/(2λ)) dx = ½ j! Σ(2λ)^{j+1}.
  auto kernel_moment = [&spec](int j) {
    double acc = 0.0;
    for (auto it = spec.lambdas.rbegin(); it != spec.lambdas.rend(); ++it) {
      acc += std::pow(2.0 * *it, j + 1);
    }
    return 0.5 * std::tgamma(j + 1.0) * acc;
  };
  auto binom = [](int n, int r) {
    return std::tgamma(n + 1.0) / (std::tgamma(r + 1.0) * std::tgamma(n - r + 1.0));
  };
  double rhs = spec.sigma_eps2 * k * mom[static_cast<std::size_t>(k - 1)];
  for (int j = 1; j <= k; ++j) {
    rhs += binom(k, j) * mom[static_cast<std::size_t>(k - j)] * kernel_moment(j);
  }
  return {lhs, rhs};
}

}  // namespace rosenblatt
