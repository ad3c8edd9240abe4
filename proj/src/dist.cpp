#include "rosenblatt/dist.h"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "charfn_detail.h"
#include "quadrature.h"
#include "rosenblatt/charfn.h"
#include "rosenblatt/errors.h"
#include "rosenblatt/io.h"
#include "rosenblatt/parallel.h"
#include "rosenblatt/rng.h"

namespace rosenblatt {

namespace {

constexpr double kPi = std::numbers::pi;

struct Limit {
  double zmax;
  bool tail;
};

Limit resolve_zmax(const Spectrum& spec, const QuadOptions& quad) {
  if (!(quad.zmax > 0.0) || !std::isfinite(quad.zmax)) {
    throw DomainError("quad.zmax must be positive");
  }
  if (!(quad.tol > 0.0)) {
    throw DomainError("quad.tol must be positive");
  }
  double z = quad.zmax;
  for (int i = 0;; ++i) {
    if (detail::charfn_parts(spec, z).log_modulus < std::log(kCharfnCutoff)) {
      return {z, false};
    }
    if (i == kMaxZmaxDoublings) {
      return {z, true};
    }
    z *= 2.0;
  }
}

enum class Kernel { density, cdf };

/// ∫_Z^∞ of the density (Re φe^{-izx}) or Gil-Pelaez (Im φe^{-izx}/z)
/// integrand, for characteristic functions that decay too slowly to truncate.
///
/// With ω = x + Σλ the integrand is ψ(z)e^{-iωz} where ψ varies slowly, so
/// after shifting z = Z + t it splits into ∫A(t)cos(ωt) + ∫B(t)sin(ωt),
/// which the double-exponential Ooura rules handle.
double oscillatory_tail(const Spectrum& spec, double x, double Z, Kernel kernel, double tol) {
  const double omega = x + detail::lambda_sum(spec);
  const double w = std::abs(omega);
  if (w < 1e-9) {
    throw NumericalError("Fourier inversion: x is at the lower support edge", w);
  }
  const double sign = omega > 0.0 ? 1.0 : -1.0;
  const double cz = std::cos(omega * Z);
  const double sz = std::sin(omega * Z);

  auto psi = [&spec, Z](double t) {
    const auto p = detail::charfn_parts(spec, Z + t);
    const double m = std::exp(p.log_modulus);
    return std::pair{m * std::cos(p.slow_phase), m * std::sin(p.slow_phase)};
  };
  auto cos_part = [&](double t) {
    auto [re, im] = psi(t);
    return kernel == Kernel::density ? cz * re + sz * im : (cz * im - sz * re) / (Z + t);
  };
  auto sin_part = [&](double t) {
    auto [re, im] = psi(t);
    return kernel == Kernel::density ? -sz * re + cz * im : (-sz * im - cz * re) / (Z + t);
  };

  static boost::math::quadrature::ooura_fourier_cos<double> cos_rule(1e-10, 10);
  static boost::math::quadrature::ooura_fourier_sin<double> sin_rule(1e-10, 10);
  const auto c = cos_rule.integrate(cos_part, w);
  const auto s = sin_rule.integrate(sin_part, w);
  const double value = c.first + sign * s.first;
  const double err = std::abs(c.second * c.first) + std::abs(s.second * s.first);
  if (!std::isfinite(value) || err > std::max(tol * kPi, 1e-7)) {
    throw NumericalError("Fourier inversion: oscillatory tail did not converge", err);
  }
  return value;
}

double raw_density(const Spectrum& spec, double x, const QuadOptions& quad) {
  const Limit lim = resolve_zmax(spec, quad);
  const double lsum = detail::lambda_sum(spec);
  auto f = [&spec, x, lsum](double z) {
    const auto p = detail::charfn_parts(spec, z);
    return std::exp(p.log_modulus) * std::cos(p.slow_phase - z * (lsum + x));
  };
  double v = detail::integrate_or_throw(f, 0.0, lim.zmax, quad.tol * kPi, 0.0, "density");
  if (lim.tail) {
    v += oscillatory_tail(spec, x, lim.zmax, Kernel::density, quad.tol);
  }
  return v / kPi;
}

double raw_cdf(const Spectrum& spec, double x, const QuadOptions& quad) {
  const Limit lim = resolve_zmax(spec, quad);
  const double lsum = detail::lambda_sum(spec);
  auto f = [&spec, x, lsum](double z) {
    const auto p = detail::charfn_parts(spec, z);
    return std::exp(p.log_modulus) * std::sin(p.slow_phase - z * (lsum + x)) / z;
  };
  double v = detail::integrate_or_throw(f, 0.0, lim.zmax, quad.tol * kPi, 0.0, "cdf");
  if (lim.tail) {
    v += oscillatory_tail(spec, x, lim.zmax, Kernel::cdf, quad.tol);
  }
  return 0.5 - v / kPi;
}

template <class Cdf>
double invert_cdf(Cdf&& F, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("quantile: p must lie in (0, 1)");
  }
  constexpr double kBracketLimit = 1e4;
  double lo = -1.0;
  double hi = 1.0;
  while (F(lo) > p) {
    lo *= 2.0;
    if (lo < -kBracketLimit) {
      throw NumericalError("quantile: lower bracket expanded beyond |x| = 1e4");
    }
  }
  while (F(hi) < p) {
    hi *= 2.0;
    if (hi > kBracketLimit) {
      throw NumericalError("quantile: upper bracket expanded beyond |x| = 1e4");
    }
  }
  for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (F(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double effective_zmax(const Spectrum& spec, const QuadOptions& quad) {
  return resolve_zmax(spec, quad).zmax;
}

double density(const Spectrum& spec, double x, const QuadOptions& quad) {
  return std::max(0.0, raw_density(spec, x, quad));
}

double cdf(const Spectrum& spec, double x, const QuadOptions& quad) {
  return std::clamp(raw_cdf(spec, x, quad), 0.0, 1.0);
}

double quantile(const Spectrum& spec, double p, const QuadOptions& quad) {
  return invert_cdf([&](double x) { return cdf(spec, x, quad); }, p);
}

// ---------------------------------------------------------------------------

namespace {

using PanelRule = boost::math::quadrature::gauss<double, 30>;
constexpr double kPanelWidth = 0.5;
// Largest |x| for which a panel carries at most ~15 radians of e^{-izx}.
constexpr double kBatchMaxAbsX = 30.0;

}  // namespace

Distribution::Distribution(Spectrum spec, QuadOptions quad) : spec_(std::move(spec)), quad_(quad) {
  const Limit lim = resolve_zmax(spec_, quad_);
  zmax_ = lim.zmax;
  tail_ = lim.tail;

  const auto& abscissa = PanelRule::abscissa();
  const auto& weight = PanelRule::weights();
  const auto panels = static_cast<std::size_t>(std::ceil(zmax_ / kPanelWidth));
  const double h = zmax_ / static_cast<double>(panels);
  for (std::size_t k = 0; k < panels; ++k) {
    const double mid = (static_cast<double>(k) + 0.5) * h;
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      const double off = 0.5 * h * abscissa[i];
      const double w = 0.5 * h * weight[i];
      if (off == 0.0) {
        nodes_.push_back(mid);
        weights_.push_back(w);
      } else {
        nodes_.push_back(mid - off);
        weights_.push_back(w);
        nodes_.push_back(mid + off);
        weights_.push_back(w);
      }
    }
  }
  phi_.resize(nodes_.size());
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    phi_[j] = charfn_eps(spec_, nodes_[j]);
  }
}

double Distribution::raw_pdf(double x) const {
  if (std::abs(x) > kBatchMaxAbsX) {
    return raw_density(spec_, x, quad_);
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    const double t = nodes_[j] * x;
    acc += weights_[j] * (phi_[j].real() * std::cos(t) + phi_[j].imag() * std::sin(t));
  }
  if (tail_) {
    acc += oscillatory_tail(spec_, x, zmax_, Kernel::density, quad_.tol);
  }
  return acc / kPi;
}

double Distribution::raw_cdf(double x) const {
  if (std::abs(x) > kBatchMaxAbsX) {
    return rosenblatt::raw_cdf(spec_, x, quad_);
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    const double t = nodes_[j] * x;
    // Im(φ e^{-it}) = Im φ cos t - Re φ sin t
    acc += weights_[j] * (phi_[j].imag() * std::cos(t) - phi_[j].real() * std::sin(t)) / nodes_[j];
  }
  if (tail_) {
    acc += oscillatory_tail(spec_, x, zmax_, Kernel::cdf, quad_.tol);
  }
  return 0.5 - acc / kPi;
}

double Distribution::pdf(double x) const { return std::max(0.0, raw_pdf(x)); }

double Distribution::cdf(double x) const { return std::clamp(raw_cdf(x), 0.0, 1.0); }

double Distribution::quantile(double p) const {
  return invert_cdf([this](double x) { return cdf(x); }, p);
}

DensityTable Distribution::table(std::span<const double> xs) const {
  DensityTable t;
  t.a = spec_.a;
  t.M = spec_.M();
  t.quad_zmax = zmax_;
  t.quad_tol = quad_.tol;
  t.min_raw_pdf = std::numeric_limits<double>::infinity();
  double running_cdf = 0.0;
  for (double x : xs) {
    const double raw = raw_pdf(x);
    t.min_raw_pdf = std::min(t.min_raw_pdf, raw);
    t.xs.push_back(x);
    t.pdf.push_back(std::max(0.0, raw));
    // Inversion noise may make neighbouring CDF values dip by ~tol; the
    // table promises a non-decreasing column.
    running_cdf = std::max(running_cdf, cdf(x));
    t.cdf.push_back(running_cdf);
  }
  return t;
}

DensityTable density_table(const Spectrum& spec, std::span<const double> xs,
                           const QuadOptions& quad) {
  return Distribution(spec, quad).table(xs);
}

std::string density_table_csv(const DensityTable& table) {
  std::ostringstream os;
  os << "x,pdf,log_pdf,cdf\n";
  for (std::size_t i = 0; i < table.xs.size(); ++i) {
    const double p = table.pdf[i];
    os << io::fmt17(table.xs[i]) << ',' << io::fmt17(p) << ','
       << io::fmt17(p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity()) << ','
       << io::fmt17(table.cdf[i]) << '\n';
  }
  return os.str();
}

double sample_one(const Spectrum& spec, std::uint64_t seed, std::uint64_t index) {
  rng::StdNormal normal(rng::derive_seed(seed, 0, index));
  double v = spec.sigma_eps() * normal();
  for (double l : spec.lambdas) {
    const double e = normal();
    v += l * (e * e - 1.0);
  }
  return v;
}

std::vector<double> sample(const Spectrum& spec, std::uint64_t seed, std::size_t count,
                           unsigned threads) {
  if (count == 0) {
    throw DomainError("sample: count must be at least 1");
  }
  std::vector<double> out(count);
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  parallel_for(chunks, threads, [&](std::size_t c) {
    const std::size_t end = std::min(count, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      out[i] = sample_one(spec, seed, i);
    }
  });
  return out;
}

}  // namespace rosenblatt
