#include "rosenblatt/mc.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "rosenblatt/errors.h"
#include "rosenblatt/fbm.h"
#include "rosenblatt/parallel.h"
#include "rosenblatt/rng.h"
#include "rosenblatt/specfn.h"
#include "rosenblatt/spectrum.h"

namespace rosenblatt {

namespace {

constexpr std::size_t kKsGrid = 2001;
constexpr std::size_t kKdePoints = 512;
constexpr std::size_t kMaxBins = 10000;

double normalizer(double a, std::size_t n) {
  return sigma_a(a) * std::pow(static_cast<double>(n), a - 1.0);
}

void require_nonempty(std::span<const double> v, const char* what) {
  if (v.empty()) {
    throw DomainError(std::string(what) + ": input sequence must be non-empty");
  }
}

}  // namespace

std::string_view to_string(FunctionalKind kind) {
  switch (kind) {
    case FunctionalKind::mean_h2:
      return "mean";
    case FunctionalKind::correlation:
      return "corr";
    case FunctionalKind::sojourn:
      return "sojourn";
    case FunctionalKind::quadvar:
      return "quadvar";
  }
  return "?";
}

FunctionalKind parse_functional_kind(std::string_view name) {
  if (name == "mean" || name == "mean_h2") {
    return FunctionalKind::mean_h2;
  }
  if (name == "corr" || name == "correlation") {
    return FunctionalKind::correlation;
  }
  if (name == "sojourn") {
    return FunctionalKind::sojourn;
  }
  if (name == "quadvar") {
    return FunctionalKind::quadvar;
  }
  throw DomainError("unknown functional '" + std::string(name) + "'");
}

void validate(const FunctionalSpec& fs) {
  if (fs.n == 0) {
    throw DomainError("functional: n must be at least 1");
  }
  switch (fs.kind) {
    case FunctionalKind::mean_h2:
    case FunctionalKind::sojourn:
    case FunctionalKind::correlation:
      if (!(fs.a > 0.0 && fs.a < 0.5)) {
        throw DomainError("functional: a must lie in (0, 0.5)");
      }
      break;
    case FunctionalKind::quadvar:
      if (!(fs.a > 0.0 && fs.a < 0.5)) {
        throw DomainError("quadvar: a must lie in (0, 0.5)");
      }
      if (fs.n < 2) {
        throw DomainError("quadvar: n must be at least 2");
      }
      break;
  }
  if (fs.kind == FunctionalKind::correlation && fs.lag >= fs.n) {
    throw DomainError("corr: lag must be smaller than n");
  }
  if (fs.kind == FunctionalKind::sojourn && !(fs.level > 0.0)) {
    throw DomainError("sojourn: level must be positive");
  }
}

double functional_mean_h2(std::span<const double> e, double a) {
  require_nonempty(e, "mean_h2");
  double acc = 0.0;
  for (double v : e) {
    acc += v * v - 1.0;
  }
  return normalizer(a, e.size()) * acc;
}

double functional_corr(std::span<const double> e, double a, std::size_t k, double r_true) {
  require_nonempty(e, "corr");
  if (k >= e.size()) {
    throw DomainError("corr: lag must be smaller than n");
  }
  double acc = 0.0;
  for (std::size_t j = 0; j + k < e.size(); ++j) {
    acc += e[j] * e[j + k] - r_true;
  }
  return normalizer(a, e.size()) * acc;
}

double functional_sojourn(std::span<const double> e, double a, double u) {
  require_nonempty(e, "sojourn");
  if (!(u > 0.0)) {
    throw DomainError("sojourn: level must be positive");
  }
  std::size_t count = 0;
  for (double v : e) {
    count += std::abs(v) > u ? 1 : 0;
  }
  const double n = static_cast<double>(e.size());
  const double tail = specfn::std_normal_cdf(-u);
  const double centred = static_cast<double>(count) - 2.0 * n * tail;
  return normalizer(a, e.size()) * centred / (u * specfn::std_normal_pdf(u));
}

double functional_quadvar(std::span<const double> x, double a) {
  if (x.size() < 2) {
    throw DomainError("quadvar: path needs at least two points");
  }
  if (!(a > 0.0 && a < 0.5)) {
    throw DomainError("quadvar: a must lie in (0, 0.5)");
  }
  const std::size_t n = x.size() - 1;
  const double dn = static_cast<double>(n);
  const double centre = std::pow(dn, a - 2.0);
  double acc = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    const double d = x[j] - x[j - 1];
    acc += d * d - centre;
  }
  return normalizer(a, n) * std::pow(dn, 2.0 - a) / (1.04 - 1.5 * a) * acc;
}

EmpiricalDensity summarize(std::vector<double> values) {
  if (values.empty()) {
    throw DomainError("summarize: no replicate values");
  }
  EmpiricalDensity ed;
  ed.reps = values.size();
  const double N = static_cast<double>(ed.reps);
  double mean = 0.0;
  for (double v : values) {
    mean += v;
  }
  mean /= N;
  double m2 = 0.0;
  double m3 = 0.0;
  for (double v : values) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= N;
  m3 /= N;
  ed.mean = mean;
  ed.sd = ed.reps > 1 ? std::sqrt(m2 * N / (N - 1.0)) : 0.0;
  ed.skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;

  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front();
  const double hi = sorted.back();
  auto quartile = [&](double p) {
    const double pos = p * (N - 1.0);
    const auto i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    return i + 1 < sorted.size() ? sorted[i] + frac * (sorted[i + 1] - sorted[i]) : sorted[i];
  };
  const double iqr = quartile(0.75) - quartile(0.25);
  std::size_t bins = 1;
  if (hi > lo && iqr > 0.0) {
    const double width = 2.0 * iqr * std::pow(N, -1.0 / 3.0);
    bins = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil((hi - lo) / width)), 1,
                                   kMaxBins);
  }
  const double span = hi > lo ? hi - lo : 1.0;
  const double left = hi > lo ? lo : lo - 0.5;
  ed.bin_edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) {
    ed.bin_edges[b] = left + span * static_cast<double>(b) / static_cast<double>(bins);
  }
  ed.bin_mass.assign(bins, 0.0);
  for (double v : sorted) {
    auto b = static_cast<std::size_t>((v - left) / span * static_cast<double>(bins));
    ed.bin_mass[std::min(b, bins - 1)] += 1.0 / N;
  }

  if (ed.sd > 0.0) {
    const double bw = 1.06 * ed.sd * std::pow(N, -0.2);
    const double x0 = lo - 3.0 * bw;
    const double x1 = hi + 3.0 * bw;
    ed.kde_xs.resize(kKdePoints);
    ed.kde_vals.assign(kKdePoints, 0.0);
    const double norm = 1.0 / (N * bw * std::sqrt(2.0 * std::numbers::pi));
    for (std::size_t i = 0; i < kKdePoints; ++i) {
      const double x = x0 + (x1 - x0) * static_cast<double>(i) / (kKdePoints - 1.0);
      ed.kde_xs[i] = x;
      // Only samples within 8 bandwidths contribute measurably.
      const auto first = std::lower_bound(sorted.begin(), sorted.end(), x - 8.0 * bw);
      const auto last = std::upper_bound(sorted.begin(), sorted.end(), x + 8.0 * bw);
      double acc = 0.0;
      for (auto it = first; it != last; ++it) {
        const double z = (x - *it) / bw;
        acc += std::exp(-0.5 * z * z);
      }
      ed.kde_vals[i] = norm * acc;
    }
  }
  ed.values = std::move(values);
  return ed;
}

EmpiricalDensity run_monte_carlo(const FunctionalSpec& fs, std::size_t reps,
                                 std::uint64_t seed, const McOptions& opts) {
  validate(fs);
  if (reps < 2) {
    throw DomainError("mc: reps must be at least 2");
  }
  std::vector<double> values(reps);
  auto key = [&](std::size_t r) {
    return opts.identical_seeds ? seed : rng::derive_seed(seed, 2, r);
  };
  if (fs.kind == FunctionalKind::quadvar) {
    const FbmGenerator gen(1.0 - fs.a / 2.0, fs.n);
    parallel_for(reps, opts.threads, [&](std::size_t r) {
      values[r] = functional_quadvar(gen.path(key(r)), fs.a);
    });
    return summarize(std::move(values));
  }
  const ExpMixture mix = build_mixture(fs.a, fs.corr_kind);
  const double r_true =
      fs.kind == FunctionalKind::correlation ? mixture_corr(mix, static_cast<double>(fs.lag)) : 0.0;
  parallel_for(reps, opts.threads, [&](std::size_t r) {
    const std::vector<double> e = simulate_lrd(mix, fs.n, key(r));
    switch (fs.kind) {
      case FunctionalKind::mean_h2:
        values[r] = functional_mean_h2(e, fs.a);
        break;
      case FunctionalKind::correlation:
        values[r] = functional_corr(e, fs.a, fs.lag, r_true);
        break;
      case FunctionalKind::sojourn:
        values[r] = functional_sojourn(e, fs.a, fs.level);
        break;
      case FunctionalKind::quadvar:
        break;
    }
  });
  return summarize(std::move(values));
}

double ks_distance(std::span<const double> values, const Distribution& dist) {
  if (values.empty()) {
    throw DomainError("ks_distance: no values");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front();
  const double hi = sorted.back();
  const std::size_t grid = hi > lo ? kKsGrid : 1;
  std::vector<double> xs(grid);
  std::vector<double> fs(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    xs[i] = grid == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (grid - 1.0);
    fs[i] = dist.cdf(xs[i]);
    if (i > 0) {
      fs[i] = std::max(fs[i], fs[i - 1]);
    }
  }
  auto F = [&](double x) {
    if (grid == 1) {
      return fs[0];
    }
    const double pos = (x - lo) / (hi - lo) * (grid - 1.0);
    const auto i = std::min(static_cast<std::size_t>(pos), grid - 2);
    const double frac = std::clamp(pos - static_cast<double>(i), 0.0, 1.0);
    return fs[i] + frac * (fs[i + 1] - fs[i]);
  };
  const double N = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = F(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / N - f, f - static_cast<double>(i) / N});
  }
  return d;
}

double ks_two_sample(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) {
    throw DomainError("ks_two_sample: empty sample");
  }
  std::vector<double> a(x.begin(), x.end());
  std::vector<double> b(y.begin(), y.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) {
      ++i;
    }
    while (j < b.size() && b[j] == v) {
      ++j;
    }
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace rosenblatt
