#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "qkds/error.hpp"

namespace qkds {

/// Scalar root problem on a bracket with a sign change.
struct RootProblem {
  std::function<double(double)> objective;
  /// Analytic derivative; when empty every step is a bisection.
  std::function<double(double)> derivative;
  double bracket_lo = 0.0;
  double bracket_hi = 1.0;
  double x0 = 0.5;
  double tol = 1e-12;
  int max_iter = 100;
};

/// Newton iteration safeguarded by bisection (in the spirit of rtsafe).
///
/// Returns x with |objective(x)| < tol. A Newton step that would leave the
/// current bracket, or that fails to halve the previous step, is replaced by
/// a bisection. Endpoint values must have strictly opposite signs.
inline double find_root(const RootProblem& rp) {
  if (!(rp.tol > 0.0)) throw InputError("root tolerance must be > 0");
  if (!(rp.bracket_lo < rp.bracket_hi)) throw InputError("root bracket must satisfy lo < hi");

  double lo = rp.bracket_lo;
  double hi = rp.bracket_hi;
  const double f_lo = rp.objective(lo);
  const double f_hi = rp.objective(hi);
  if (!(f_lo * f_hi < 0.0)) {
    throw SolverError(SolverFailure::NoSignChange,
                      "objective has no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  // Orient so that objective(lo) < 0 < objective(hi).
  if (f_lo > 0.0) std::swap(lo, hi);

  double x = rp.x0;
  if (!(x > std::min(lo, hi) && x < std::max(lo, hi))) x = 0.5 * (lo + hi);
  double dx_old = std::abs(hi - lo);
  double dx = dx_old;

  for (int iter = 0; iter < rp.max_iter; ++iter) {
    const double f = rp.objective(x);
    if (std::abs(f) < rp.tol) return x;
    if (f < 0.0) {
      lo = x;
    } else {
      hi = x;
    }

    bool newton_ok = false;
    double next = 0.0;
    if (rp.derivative) {
      const double df = rp.derivative(x);
      if (df != 0.0 && std::isfinite(df)) {
        next = x - f / df;
        const bool inside = next > std::min(lo, hi) && next < std::max(lo, hi);
        newton_ok = inside && std::abs(next - x) <= 0.5 * std::abs(dx_old);
      }
    }
    dx_old = dx;
    if (!newton_ok) next = 0.5 * (lo + hi);
    dx = next - x;
    x = next;
  }
  throw SolverError(SolverFailure::MaxIterationsExceeded,
                    "no root within " + std::to_string(rp.max_iter) + " iterations");
}

}  // namespace qkds
