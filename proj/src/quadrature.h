#pragma once

// Thin wrapper over Boost.Math adaptive Gauss-Kronrod so that every caller gets
// the same depth limit and the same failure semantics.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <string>

#include "rosenblatt/errors.h"

namespace rosenblatt::detail {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

inline constexpr unsigned kMaxQuadDepth = 15;

// Adaptive G30K61 on [lo, hi]. Stops when the error estimate is below
// max(abs_tol, rel_tol * L1).
template <class F>
QuadResult integrate(F&& f, double lo, double hi, double abs_tol, double rel_tol = 0.0) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 61>;
  QuadResult r;
  // Boost tests error against tol * L1, so an absolute target is expressed
  // relative to a first-pass L1 estimate.
  double l1 = 0.0;
  double err = 0.0;
  double first = Rule::integrate(f, lo, hi, 0, 0.0, &err, &l1);
  if (err <= abs_tol || (rel_tol > 0.0 && err <= rel_tol * l1)) {
    return {first, err, l1};
  }
  double tol = rel_tol;
  if (l1 > 0.0) {
    tol = std::max(tol, abs_tol / l1);
  }
  tol = std::max(tol, 1e-15);
  r.value = Rule::integrate(f, lo, hi, kMaxQuadDepth, tol, &r.error, &r.l1);
  return r;
}

template <class F>
double integrate_or_throw(F&& f, double lo, double hi, double abs_tol, double rel_tol,
                          const char* what) {
  QuadResult r = integrate(f, lo, hi, abs_tol, rel_tol);
  double target = std::max(abs_tol, rel_tol * r.l1);
  // Boost's estimate is pessimistic (|G - K| on each panel); allow a margin
  // before declaring failure.
  if (!std::isfinite(r.value) || r.error > 100.0 * target) {
    throw NumericalError(std::string(what) + ": quadrature did not converge", r.error);
  }
  return r.value;
}

}  // namespace rosenblatt::detail
