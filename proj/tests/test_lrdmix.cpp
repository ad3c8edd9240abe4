#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <numeric>
#include <vector>

#include "rosenblatt/errors.h"
#include "rosenblatt/lrdmix.h"
#include "rosenblatt/specfn.h"

using namespace rosenblatt;

namespace {

ExpMixture one_component(double rate) {
  ExpMixture m;
  m.a = 0.3;
  m.weights = {1.0};
  m.rates = {rate};
  m.quantile_levels = {0.5};
  m.breakpoints = {rate};
  return m;
}

// (1/n) Σ x_j x_{j+k}; the process mean is known to be zero.
double lag_product(const std::vector<double>& x, std::size_t k) {
  double acc = 0.0;
  for (std::size_t j = 0; j + k < x.size(); ++j) {
    acc += x[j] * x[j + k];
  }
  return acc / static_cast<double>(x.size() - k);
}

struct MeanSe {
  double mean;
  double se;
};

MeanSe mean_se(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) {
    ss += (x - m) * (x - m);
  }
  return {m, std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace

TEST(Mixture, SizeAndNormalisation) {
  EXPECT_EQ(mixture_size(0.25), 16u);
  EXPECT_EQ(mixture_size(0.15), 22u);
  for (auto kind : {CorrKind::power, CorrKind::mittag_leffler}) {
    for (double a : {0.15, 0.25, 0.35, 0.45, 0.8}) {
      const ExpMixture m = build_mixture(a, kind);
      EXPECT_EQ(m.M(), mixture_size(a));
      EXPECT_NEAR(std::accumulate(m.weights.begin(), m.weights.end(), 0.0), 1.0, 1e-14);
      EXPECT_NEAR(mixture_corr(m, 0.0), 1.0, 1e-14);
      for (std::size_t k = 0; k < m.M(); ++k) {
        EXPECT_GT(m.weights[k], 0.0);
        EXPECT_GT(m.rates[k], 0.0);
        if (k > 0) {
          EXPECT_LT(m.rates[k], m.rates[k - 1]);
        }
      }
    }
  }
}

TEST(Mixture, BreakpointsAreQuantiles) {
  const ExpMixture p = build_mixture(0.25, CorrKind::power);
  EXPECT_DOUBLE_EQ(p.quantile_levels[0], 0.98);
  EXPECT_DOUBLE_EQ(p.quantile_levels[1], 0.9);
  EXPECT_NEAR(p.quantile_levels[2], 0.9 * std::exp(-(2.0 - 0.25) * 0.25), 1e-15);
  EXPECT_NEAR(specfn::gamma_cdf(0.25, p.breakpoints[5]), p.quantile_levels[5], 1e-10);
  EXPECT_DOUBLE_EQ(p.rates[0], p.breakpoints[0]);
  EXPECT_NEAR(p.rates[3], std::sqrt(p.breakpoints[2] * p.breakpoints[3]), 1e-15 * p.rates[3]);

  const ExpMixture ml = build_mixture(0.35, CorrKind::mittag_leffler);
  EXPECT_DOUBLE_EQ(ml.quantile_levels[2], 0.7);
  EXPECT_DOUBLE_EQ(ml.quantile_levels[3], 0.5);
  EXPECT_DOUBLE_EQ(ml.breakpoints[3], 1.0);
}

TEST(Mixture, IntervalWeightsAreComparable) {
  for (auto kind : {CorrKind::power, CorrKind::mittag_leffler}) {
    const ExpMixture gaps = build_mixture(0.35, kind);
    const ExpMixture ints = build_mixture(0.35, kind, WeightScheme::interval_integrals);
    EXPECT_EQ(ints.rates, gaps.rates);
    const double total = std::accumulate(ints.weights.begin(), ints.weights.end(), 0.0);
    EXPECT_GT(total, 0.9);
    EXPECT_LT(total, 1.0);
    for (std::size_t k = 1; k < gaps.M(); ++k) {
      // Interior weights coincide up to the renormalisation of the gap scheme.
      EXPECT_NEAR(ints.weights[k], gaps.weights[k] * (1.0 - gaps.quantile_levels.back()), 1e-9);
    }
  }
}

TEST(MixtureCorr, SingleComponentIsExponential) {
  const ExpMixture m = one_component(0.7);
  for (double t : {0.0, 0.5, 3.0}) {
    EXPECT_NEAR(mixture_corr(m, t), std::exp(-0.7 * t), 1e-15);
  }
  EXPECT_THROW(mixture_corr(m, -1.0), DomainError);
}

TEST(MixtureCorr, PowerAtOne) {
  const ExpMixture m = build_mixture(0.25, CorrKind::power);
  EXPECT_NEAR(mixture_corr(m, 1.0), std::pow(2.0, -0.25), 0.05 * std::pow(2.0, -0.25));
}

TEST(TargetCorr, Values) {
  EXPECT_EQ(target_corr(CorrKind::power, 0.3, 0.0), 1.0);
  EXPECT_EQ(target_corr(CorrKind::mittag_leffler, 0.3, 0.0), 1.0);
  EXPECT_NEAR(target_corr(CorrKind::power, 0.45, 10.0), std::pow(11.0, -0.45), 1e-15);
  EXPECT_NEAR(target_corr(CorrKind::mittag_leffler, 0.5, 4.0),
              std::exp(4.0) * std::erfc(2.0), 1e-12);
}

TEST(ApproxReport, ZeroGrid) {
  const std::vector<double> grid = {0.0};
  const ApproxReport r = approx_error_report(build_mixture(0.3, CorrKind::power), grid);
  ASSERT_EQ(r.points.size(), 1u);
  EXPECT_NEAR(r.points[0].rel_err, 0.0, 1e-14);
  EXPECT_THROW(approx_error_report(build_mixture(0.3, CorrKind::power), {}), DomainError);
}

TEST(ApproxReport, PowerWithinFivePercent) {
  const auto grid = log_grid(0.1, 1e4, 400);
  for (double a : {0.15, 0.25, 0.35, 0.45}) {
    const ApproxReport r = approx_error_report(build_mixture(a, CorrKind::power), grid);
    EXPECT_LE(r.max_rel_err, 0.05) << a;
  }
}

TEST(ApproxReport, MittagLefflerWithinEightPercent) {
  const auto grid = log_grid(0.1, 1e4, 400);
  const ApproxReport r = approx_error_report(build_mixture(0.35, CorrKind::mittag_leffler), grid);
  EXPECT_LE(r.max_rel_err, 0.08);
}

TEST(LogGrid, Endpoints) {
  const auto g = log_grid(0.1, 1e4, 6);
  EXPECT_DOUBLE_EQ(g.front(), 0.1);
  EXPECT_DOUBLE_EQ(g.back(), 1e4);
  EXPECT_NEAR(g[1], 1.0, 1e-14);
}

TEST(Simulate, FastComponentIsWhiteNoise) {
  const auto x = simulate_lrd(one_component(60.0), 1'000'000, 5);
  EXPECT_NEAR(lag_product(x, 0), 1.0, 0.01);
  EXPECT_NEAR(lag_product(x, 1), 0.0, 0.005);
}

TEST(Simulate, SingleComponentLagOne) {
  const double r = 0.5;
  const auto x = simulate_lrd(one_component(r), 1'000'000, 6);
  EXPECT_NEAR(lag_product(x, 1) / lag_product(x, 0), std::exp(-r), 0.01);
}

TEST(Simulate, ReplicateAutocovarianceMatchesMixture) {
  // A single long-memory path fluctuates with sd ≈ n^{-a}, so the construction
  // is checked through replicate averages of the lag products.
  for (auto kind : {CorrKind::power, CorrKind::mittag_leffler}) {
    for (double a : {0.25, 0.45}) {
      const ExpMixture mix = build_mixture(a, kind);
      std::vector<std::vector<double>> est(4);
      const std::size_t lags[] = {0, 1, 10, 100};
      for (std::uint64_t rep = 0; rep < 120; ++rep) {
        const auto x = simulate_lrd(mix, 50'000, 1000 + rep);
        for (int i = 0; i < 4; ++i) {
          est[i].push_back(lag_product(x, lags[i]));
        }
      }
      for (int i = 0; i < 4; ++i) {
        const MeanSe ms = mean_se(est[i]);
        const double target = mixture_corr(mix, static_cast<double>(lags[i]));
        EXPECT_NEAR(ms.mean, target, 4.0 * ms.se) << to_string(kind) << ' ' << a << ' ' << lags[i];
        EXPECT_LT(ms.se, 0.02);
      }
    }
  }
}

TEST(Simulate, ThreadInvariantAndSeeded) {
  const ExpMixture mix = build_mixture(0.3, CorrKind::power);
  const auto one = simulate_lrd(mix, 10'000, 17, 1);
  EXPECT_EQ(one, simulate_lrd(mix, 10'000, 17, 3));
  EXPECT_EQ(one, simulate_lrd(mix, 10'000, 17, 8));
  EXPECT_NE(one, simulate_lrd(mix, 10'000, 18, 1));
  EXPECT_THROW(simulate_lrd(mix, 0, 1), DomainError);
}

TEST(Simulate, TwoMillionPointsQuickly) {
  const ExpMixture mix = build_mixture(0.25, CorrKind::power);
  const auto t0 = std::chrono::steady_clock::now();
  const auto x = simulate_lrd(mix, 2'000'000, 3);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_EQ(x.size(), 2'000'000u);
  EXPECT_LT(secs, 10.0);
}

TEST(Kinds, ParseAndPrint) {
  EXPECT_EQ(parse_corr_kind("power"), CorrKind::power);
  EXPECT_EQ(parse_corr_kind("ml"), CorrKind::mittag_leffler);
  EXPECT_EQ(to_string(CorrKind::mittag_leffler), "ml");
  EXPECT_THROW(parse_corr_kind("gauss"), DomainError);
  EXPECT_THROW(build_mixture(0.0, CorrKind::power), DomainError);
}
