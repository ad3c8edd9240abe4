#include "rosenblatt/spectrum.h"

#include <boost/math/special_functions/gamma.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "rosenblatt/errors.h"
#include "rosenblatt/io.h"
#include "rosenblatt/specfn.h"

namespace rosenblatt {

namespace {

void require_rosenblatt_shape(double a, const char* fn) {
  if (!(a >= 0.0 && a <= 0.5)) {
    throw DomainError(std::string(fn) + ": shape parameter must lie in [0, 1/2]");
  }
}

// Coefficients of the eigenvalue approximation that depend only on a.
struct EigCoeffs {
  double first;   // λ_{a,1}
  double lead;    // C_a
  double second;  // coefficient of n^{a-2.2}
  double a;

  EigCoeffs(double a_, EigenFormula formula) : a(a_) {
    const double pi = std::numbers::pi;
    first = (1.0 + 0.1409 * a) * std::sqrt(std::pow(pi, a) * std::tgamma(1.0 - a)) *
            std::sqrt(std::max(0.0, 0.5 - a));
    lead = eig_constant(a);
    const double g = std::sqrt(std::max(0.0, std::tgamma(a + 0.5) - 1.0));
    second = (formula == EigenFormula::standard) ? 1.25 * std::pow(a, 1.05) * g
                                                  : 1.05 * std::pow(a, 1.25) * g;
  }

  double operator()(std::size_t n) const {
    if (n == 1) {
      return first;
    }
    const double dn = static_cast<double>(n);
    return lead * std::pow(dn, a - 1.0) + second * std::pow(dn, a - 2.2);
  }
};

}  // namespace

double Spectrum::sigma_eps() const { return std::sqrt(sigma_eps2); }

double Spectrum::power_sum(int k) const {
  // Summed smallest-first to limit rounding in long tails.
  double s = 0.0;
  for (auto it = lambdas.rbegin(); it != lambdas.rend(); ++it) {
    s += std::pow(*it, k);
  }
  return s;
}

double sigma_a(double a) {
  require_rosenblatt_shape(a, "sigma_a");
  return std::sqrt((1.0 - 2.0 * a) * (1.0 - a) / 2.0);
}

double eig_constant(double a) {
  require_rosenblatt_shape(a, "eig_constant");
  const double pi = std::numbers::pi;
  return 2.0 * sigma_a(a) * std::tgamma(1.0 - a) * std::sin(pi * a / 2.0) / std::pow(pi, 1.0 - a);
}

double eig_approx(double a, std::size_t n, EigenFormula formula) {
  require_rosenblatt_shape(a, "eig_approx");
  if (n == 0) {
    throw DomainError("eig_approx: index n starts at 1");
  }
  return EigCoeffs(a, formula)(n);
}

Spectrum build_spectrum(double a, std::size_t M, EigenFormula formula) {
  require_rosenblatt_shape(a, "build_spectrum");
  if (M == 0) {
    throw DomainError("build_spectrum: M must be at least 1");
  }
  const EigCoeffs eig(a, formula);
  Spectrum spec;
  spec.a = a;
  spec.lambdas.resize(M);
  for (std::size_t n = 1; n <= M; ++n) {
    spec.lambdas[n - 1] = eig(n);
  }
  const double remainder = 1.0 - 2.0 * spec.power_sum(2);
  spec.clamped = remainder < 0.0;
  spec.sigma_eps2 = std::max(0.0, remainder);
  return spec;
}

double lambda_pow_sum_exact(double a, int k) {
  require_rosenblatt_shape(a, "lambda_pow_sum_exact");
  if (k == 2) {
    return 0.5;
  }
  if (k == 3) {
    const double s = sigma_a(a);
    return 2.0 * s * s * s * specfn::beta(1.0 - a, 1.0 - a) / ((1.0 - a) * (2.0 - 3.0 * a));
  }
  throw UnsupportedError("lambda_pow_sum_exact: only k = 2 and k = 3 have closed forms");
}

namespace {

// tails[M] = tail_3(M) for M = 0..limit (index 0 unused by callers).
std::vector<double> tail3_table(double a, const ChooseMOptions& opts, std::size_t limit) {
  const EigCoeffs eig(a, EigenFormula::standard);
  std::vector<double> tails(limit + 1, 0.0);
  if (opts.rule == TailRule::truncated_horizon) {
    double acc = 0.0;
    for (std::size_t n = opts.horizon; n >= 1; --n) {
      if (n <= limit) {
        tails[n] = acc;
      }
      const double l = eig(n);
      acc += l * l * l;
    }
    tails[0] = acc;
  } else {
    const double total = lambda_pow_sum_exact(a, 3);
    double partial = 0.0;
    tails[0] = total;
    for (std::size_t n = 1; n <= limit; ++n) {
      const double l = eig(n);
      partial += l * l * l;
      tails[n] = std::max(0.0, total - partial);
    }
  }
  return tails;
}

void check_choose_inputs(double a, double eps) {
  if (!(a > 0.0 && a < 0.5)) {
    throw DomainError("choose_M: shape parameter must lie in (0, 1/2)");
  }
  if (!(eps > 0.0)) {
    throw DomainError("choose_M: eps must be positive");
  }
}

}  // namespace

double tail3(double a, std::size_t M, const ChooseMOptions& opts) {
  check_choose_inputs(a, 1.0);
  if (opts.rule == TailRule::truncated_horizon && M >= opts.horizon) {
    return 0.0;
  }
  return tail3_table(a, opts, M)[M];
}

std::size_t choose_M(double a, double eps, const ChooseMOptions& opts) {
  check_choose_inputs(a, eps);
  if (opts.rule == TailRule::truncated_horizon) {
    const std::size_t limit = opts.horizon;
    const auto tails = tail3_table(a, opts, limit);
    for (std::size_t M = 1; M <= limit; ++M) {
      if (tails[M] <= eps) {
        if (M > opts.cap) {
          break;
        }
        return M;
      }
    }
    throw ResourceError("choose_M: required truncation level exceeds the cap");
  }
  const EigCoeffs eig(a, EigenFormula::standard);
  const double total = lambda_pow_sum_exact(a, 3);
  double partial = 0.0;
  for (std::size_t M = 1; M <= opts.cap; ++M) {
    const double l = eig(M);
    partial += l * l * l;
    if (total - partial <= eps) {
      return M;
    }
  }
  throw ResourceError("choose_M: required truncation level exceeds the cap");
}

std::string spectrum_to_csv(const Spectrum& spec) {
  std::ostringstream os;
  os << "n,lambda\n";
  for (std::size_t i = 0; i < spec.lambdas.size(); ++i) {
    os << (i + 1) << ',' << io::fmt17(spec.lambdas[i]) << '\n';
  }
  os << "# sigma_eps2=" << io::fmt17(spec.sigma_eps2) << '\n';
  return os.str();
}

std::string spectrum_to_json(const Spectrum& spec) {
  nlohmann::json j;
  j["a"] = spec.a;
  j["M"] = spec.M();
  j["lambdas"] = spec.lambdas;
  j["sigma_eps2"] = spec.sigma_eps2;
  j["sum_lambda2"] = spec.power_sum(2);
  return j.dump() + "\n";
}

}  // namespace rosenblatt
