#include "rosenblatt/lrdmix.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rosenblatt/errors.h"
#include "rosenblatt/parallel.h"
#include "rosenblatt/rng.h"
#include "rosenblatt/specfn.h"

namespace rosenblatt {

namespace {

void require_lrd_shape(double a) {
  if (!(a > 0.0 && a < 1.0)) {
    throw DomainError("mixture: shape parameter must lie in (0, 1)");
  }
}

// Quantile levels q_1..q_M of the power and Mittag-Leffler schedules.
std::vector<double> schedule(double a, CorrKind kind, std::size_t M) {
  const double gamma = std::exp(-(2.0 - a) * a);
  std::vector<double> q(M);
  for (std::size_t k = 1; k <= M; ++k) {
    const double dk = static_cast<double>(k);
    double v = 0.0;
    if (kind == CorrKind::power) {
      v = (k == 1) ? 0.98 : 0.9 * std::pow(gamma, dk - 2.0);
    } else if (k == 1) {
      v = 0.98;
    } else if (k == 2) {
      v = 0.9;
    } else if (k == 3) {
      v = 0.7;
    } else {
      v = 0.5 * std::pow(gamma, dk - 4.0);
    }
    q[k - 1] = v;
  }
  return q;
}

// CDF of the mixing density p(x).
double mixing_cdf(CorrKind kind, double a, double x) {
  if (kind == CorrKind::power) {
    return specfn::gamma_cdf(a, x);
  }
  const double theta = a * std::numbers::pi;
  const double r = std::pow(x, a);
  return std::atan2(r * std::sin(theta), 1.0 + r * std::cos(theta)) / theta;
}

}  // namespace

std::string_view to_string(CorrKind kind) {
  return kind == CorrKind::power ? "power" : "ml";
}

CorrKind parse_corr_kind(std::string_view name) {
  if (name == "power") {
    return CorrKind::power;
  }
  if (name == "ml" || name == "mittag_leffler") {
    return CorrKind::mittag_leffler;
  }
  throw DomainError("unknown correlation kind '" + std::string(name) + "'");
}

std::size_t mixture_size(double a) {
  require_lrd_shape(a);
  return static_cast<std::size_t>(std::ceil(2.0 / a)) + 8;
}

ExpMixture build_mixture(double a, CorrKind kind, WeightScheme scheme) {
  const std::size_t M = mixture_size(a);
  ExpMixture mix;
  mix.a = a;
  mix.kind = kind;
  mix.quantile_levels = schedule(a, kind, M);
  mix.breakpoints.resize(M);
  for (std::size_t k = 0; k < M; ++k) {
    const double q = mix.quantile_levels[k];
    mix.breakpoints[k] = kind == CorrKind::power ? specfn::gamma_quantile(a, q)
                                                 : specfn::lamperti_quantile(a, q);
  }
  mix.rates.resize(M);
  mix.rates[0] = mix.breakpoints[0];
  for (std::size_t k = 1; k < M; ++k) {
    mix.rates[k] = std::sqrt(mix.breakpoints[k - 1] * mix.breakpoints[k]);
  }
  mix.weights.resize(M);
  if (scheme == WeightScheme::quantile_gaps) {
    double prev = 1.0;
    double total = 0.0;
    for (std::size_t k = 0; k < M; ++k) {
      mix.weights[k] = prev - mix.quantile_levels[k];
      prev = mix.quantile_levels[k];
      total += mix.weights[k];
    }
    for (double& b : mix.weights) {
      b /= total;
    }
  } else {
    double upper = 4.0 * mix.breakpoints[0];
    for (std::size_t k = 0; k < M; ++k) {
      mix.weights[k] =
          mixing_cdf(kind, a, upper) - mixing_cdf(kind, a, mix.breakpoints[k]);
      upper = mix.breakpoints[k];
    }
  }
  return mix;
}

double mixture_corr(const ExpMixture& mix, double t) {
  if (!(t >= 0.0)) {
    throw DomainError("mixture_corr: t must be non-negative");
  }
  double acc = 0.0;
  for (std::size_t k = mix.M(); k-- > 0;) {
    acc += mix.weights[k] * std::exp(-mix.rates[k] * t);
  }
  return acc;
}

double target_corr(CorrKind kind, double a, double t) {
  require_lrd_shape(a);
  if (!(t >= 0.0)) {
    throw DomainError("target_corr: t must be non-negative");
  }
  if (kind == CorrKind::power) {
    return std::pow(1.0 + t, -a);
  }
  return specfn::mittag_leffler_neg(a, t);
}

ApproxReport approx_error_report(const ExpMixture& mix, std::span<const double> grid) {
  if (grid.empty()) {
    throw DomainError("approx_error_report: grid must be non-empty");
  }
  ApproxReport rep;
  for (double t : grid) {
    const double target = target_corr(mix.kind, mix.a, t);
    const double approx = mixture_corr(mix, t);
    const double rel = std::abs(approx - target) / target;
    rep.points.push_back({t, target, approx, rel});
    rep.max_rel_err = std::max(rep.max_rel_err, rel);
  }
  return rep;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0 && hi >= lo) || count == 0) {
    throw DomainError("log_grid: need 0 < lo <= hi and count >= 1");
  }
  std::vector<double> g(count);
  if (count == 1) {
    g[0] = lo;
    return g;
  }
  const double step = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    g[i] = lo * std::exp(step * static_cast<double>(i));
  }
  g.back() = hi;
  return g;
}

namespace {

void add_ar1_component(const ExpMixture& mix, std::size_t k, std::uint64_t seed,
                       std::span<double> out) {
  const double rate = mix.rates[k];
  const double coef = std::exp(-rate);
  const double innov = std::sqrt(-std::expm1(-2.0 * rate));
  const double scale = std::sqrt(mix.weights[k]);
  rng::StdNormal normal(rng::derive_seed(seed, 1, k));
  double x = normal();
  out[0] = scale * x;
  for (std::size_t j = 1; j < out.size(); ++j) {
    x = coef * x + innov * normal();
    out[j] = scale * x;
  }
}

}  // namespace

std::vector<double> simulate_lrd(const ExpMixture& mix, std::size_t n, std::uint64_t seed,
                                 unsigned threads) {
  if (n == 0) {
    throw DomainError("simulate_lrd: n must be at least 1");
  }
  const std::size_t M = mix.M();
  std::vector<double> out(n, 0.0);
  if (threads <= 1) {
    std::vector<double> comp(n);
    for (std::size_t k = 0; k < M; ++k) {
      add_ar1_component(mix, k, seed, comp);
      for (std::size_t j = 0; j < n; ++j) {
        out[j] += comp[j];
      }
    }
    return out;
  }
  // Components are generated in parallel batches and added in index order,
  // which keeps the floating-point summation order fixed.
  const std::size_t batch = std::min<std::size_t>(threads, M);
  std::vector<std::vector<double>> bufs(batch, std::vector<double>(n));
  for (std::size_t first = 0; first < M; first += batch) {
    const std::size_t count = std::min(batch, M - first);
    parallel_for(count, threads,
                 [&](std::size_t i) { add_ar1_component(mix, first + i, seed, bufs[i]); });
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        out[j] += bufs[i][j];
      }
    }
  }
  return out;
}

}  // namespace rosenblatt
