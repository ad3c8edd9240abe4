#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.h"
#include "rosenblatt/charfn.h"
#include "rosenblatt/dist.h"
#include "rosenblatt/errors.h"
#include "rosenblatt/spectrum.h"

using namespace rosenblatt;

namespace {

const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

struct BatchStat {
  double value;
  double se;
};

// Statistic over the whole sample with a standard error from 100 batch values.
template <class Stat>
BatchStat batched(const std::vector<double>& xs, Stat stat) {
  const std::size_t batches = 100;
  const std::size_t len = xs.size() / batches;
  std::vector<double> vals;
  for (std::size_t b = 0; b < batches; ++b) {
    vals.push_back(stat(std::span<const double>(xs).subspan(b * len, len)));
  }
  double mean = 0.0;
  for (double v : vals) {
    mean += v;
  }
  mean /= batches;
  double var = 0.0;
  for (double v : vals) {
    var += (v - mean) * (v - mean);
  }
  var /= batches - 1.0;
  return {stat(std::span<const double>(xs)), std::sqrt(var / batches)};
}

double raw_moment(std::span<const double> xs, int k) {
  double acc = 0.0;
  for (double x : xs) {
    acc += std::pow(x, k);
  }
  return acc / static_cast<double>(xs.size());
}

double skewness(std::span<const double> xs) {
  const double n = static_cast<double>(xs.size());
  double m = 0.0;
  for (double x : xs) {
    m += x;
  }
  m /= n;
  double m2 = 0.0;
  double m3 = 0.0;
  for (double x : xs) {
    m2 += (x - m) * (x - m);
    m3 += (x - m) * (x - m) * (x - m);
  }
  return (m3 / n) / std::pow(m2 / n, 1.5);
}

}  // namespace

TEST(Density, GaussianLimit) {
  const Spectrum spec = build_spectrum(0.5, 10);
  EXPECT_NEAR(density(spec, 0.0), kInvSqrt2Pi, 1e-9);
  EXPECT_NEAR(cdf(spec, 0.0), 0.5, 1e-9);
  EXPECT_NEAR(quantile(spec, 0.5), 0.0, 1e-6);
}

TEST(Density, ChiSquareLimitAtZero) {
  const Spectrum spec = build_spectrum(0.0, 1);
  EXPECT_NEAR(density(spec, 0.0), oracle::scaled_chi2_pdf(0.0), 1e-6);
  EXPECT_NEAR(density(spec, 0.0), 0.3421983, 1e-6);
  EXPECT_NEAR(cdf(spec, 0.0), 0.6826895, 1e-6);
}

TEST(Density, ChiSquareQuantiles) {
  const Spectrum spec = build_spectrum(0.0, 1);
  for (double p : {0.01, 0.1, 0.5, 0.9, 0.99}) {
    EXPECT_NEAR(quantile(spec, p), oracle::scaled_chi2_quantile(p), 1e-6) << p;
  }
}

TEST(Density, AgreesWithHistogramOfExactDraws) {
  const Spectrum spec = build_spectrum(0.3, 100);
  const auto xs = sample(spec, 11, 10'000'000);
  const double h = 0.02;
  const auto hits = std::count_if(xs.begin(), xs.end(),
                                  [h](double x) { return std::abs(x - 0.5) < 0.5 * h; });
  const double est = static_cast<double>(hits) / (static_cast<double>(xs.size()) * h);
  EXPECT_NEAR(density(spec, 0.5), est, 0.005);
}

TEST(Cdf, MonotoneOnGrid) {
  const Distribution dist(build_spectrum(0.3, 100));
  double prev = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double x = -2.0 + 10.0 * i / 199.0;
    const double f = cdf(dist.spectrum(), x);
    EXPECT_GE(f, prev - 1e-12) << x;
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
    prev = f;
  }
}

TEST(Quantile, RoundTrip) {
  const Spectrum spec = build_spectrum(0.3, 100);
  for (double p : {0.05, 0.5, 0.95}) {
    EXPECT_NEAR(cdf(spec, quantile(spec, p)), p, 1e-6);
  }
  EXPECT_THROW(quantile(spec, 0.0), DomainError);
  EXPECT_THROW(quantile(spec, 1.0), DomainError);
}

TEST(Distribution, MatchesAdaptiveRoute) {
  for (double a : {0.0, 0.2, 0.44}) {
    const Spectrum spec = build_spectrum(a, a == 0.0 ? 1 : choose_M(a, 1e-4));
    const Distribution dist(spec);
    for (double x = -1.5; x <= 6.0; x += 0.37) {
      EXPECT_NEAR(dist.pdf(x), density(spec, x), 1e-8) << a << ' ' << x;
      EXPECT_NEAR(dist.cdf(x), cdf(spec, x), 1e-8) << a << ' ' << x;
    }
  }
}

TEST(Distribution, ExtendsCutoffForSlowDecay) {
  EXPECT_GT(effective_zmax(build_spectrum(0.05, 3)), 20.0);
  EXPECT_DOUBLE_EQ(effective_zmax(build_spectrum(0.44, 50)), 20.0);
  EXPECT_TRUE(Distribution(build_spectrum(0.0, 1)).has_oscillatory_tail());
}

TEST(DensityTable, Invariants) {
  for (double a : {0.2, 0.3, 0.4, 0.44}) {
    const Spectrum spec = build_spectrum(a, choose_M(a, 1e-4));
    std::vector<double> xs;
    for (double x = -4.0; x <= 14.0 + 1e-12; x += 0.01) {
      xs.push_back(x);
    }
    const DensityTable t = density_table(spec, xs);
    double mass = 0.0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
      mass += 0.5 * (t.pdf[i] + t.pdf[i - 1]) * (xs[i] - xs[i - 1]);
      EXPECT_GE(t.cdf[i], t.cdf[i - 1]);
    }
    for (double p : t.pdf) {
      EXPECT_GE(p, 0.0);
    }
    EXPECT_GE(t.cdf.front(), 0.0);
    EXPECT_LE(t.cdf.back(), 1.0);
    EXPECT_NEAR(mass, 1.0, 1e-3) << a;
    EXPECT_GE(t.min_raw_pdf, -1e-9) << a;
  }
}

TEST(DensityTable, CsvLayout) {
  const Spectrum spec = build_spectrum(0.3, 20);
  const std::vector<double> xs = {-0.5, 0.0, 0.5};
  const std::string csv = density_table_csv(density_table(spec, xs));
  EXPECT_EQ(csv.rfind("x,pdf,log_pdf,cdf\n-0.5,", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST(Shape, ChiSquareLikeLeftEdgeAndGaussianLikeCentre) {
  // The Gaussian remainder of a short truncation (M = 9, σ_ε² ≈ 0.018) widens
  // the left tail to about -1.214; the near-complete spectrum shows the edge.
  const Distribution d20(build_spectrum(0.2, 1000));
  EXPECT_GT(d20.quantile(0.001), -1.2);
  const Distribution d44(build_spectrum(0.44, choose_M(0.44, 1e-4)));
  EXPECT_NEAR(d44.pdf(0.0), kInvSqrt2Pi, 0.1 * kInvSqrt2Pi);
}

TEST(Sample, GaussianLimit) {
  const auto xs = sample(build_spectrum(0.5, 5), 3, 1'000'000);
  EXPECT_NEAR(raw_moment(xs, 1), 0.0, 4e-3);
  EXPECT_NEAR(raw_moment(xs, 2), 1.0, 0.01);
}

TEST(Sample, ChiSquareSupport) {
  const auto xs = sample(build_spectrum(0.0, 1), 5, 200'000);
  EXPECT_GE(*std::min_element(xs.begin(), xs.end()), -1.0 / std::sqrt(2.0));
}

TEST(Sample, MomentsWithinFourStandardErrors) {
  const double a = 0.25;
  const Spectrum spec = build_spectrum(a, choose_M(a, 1e-4));
  const MomentSet m = moments(spec);
  const auto xs = sample(spec, 9, 1'000'000);
  const BatchStat m2 = batched(xs, [](auto s) { return raw_moment(s, 2); });
  const BatchStat m3 = batched(xs, [](auto s) { return raw_moment(s, 3); });
  const BatchStat m4 = batched(xs, [](auto s) { return raw_moment(s, 4); });
  const BatchStat sk = batched(xs, [](auto s) { return skewness(s); });
  EXPECT_NEAR(m2.value, m.m2, 4.0 * m2.se);
  EXPECT_NEAR(m3.value, m.m3_truncated, 4.0 * m3.se);
  EXPECT_NEAR(m4.value, m.m4, 4.0 * m4.se);
  EXPECT_NEAR(sk.value, m.m3, 4.0 * sk.se);
}

TEST(Sample, IndexKeyedAndThreadInvariant) {
  const Spectrum spec = build_spectrum(0.3, 40);
  const auto one = sample(spec, 42, 10000, 1);
  const auto four = sample(spec, 42, 10000, 4);
  EXPECT_EQ(one, four);
  for (std::size_t i : {0, 1, 4095, 4096, 9999}) {
    EXPECT_EQ(one[i], sample_one(spec, 42, i));
  }
  const auto prefix = sample(spec, 42, 100, 3);
  EXPECT_TRUE(std::equal(prefix.begin(), prefix.end(), one.begin()));
  EXPECT_THROW(sample(spec, 42, 0), DomainError);
}
