#pragma once

#include <cmath>

#include "qkds/models/cbsf.hpp"
#include "qkds/solvers/root.hpp"
#include "qkds/types.hpp"

namespace qkds {

inline constexpr double kCalibrationTol = 1e-12;
inline constexpr double kBracketMargin = 1e-9;

/// Finds the CBSF transmittance t for which Bob's vacuum probability equals
/// the lossy channel's exp(-mu eta). Newton starts from t0 = eta^{1/(2N)}.
///
/// The vacuum probability falls strictly from 1 (t = 0) to e^-mu (t = 1), so
/// any eta in (0, 1) has exactly one solution; eta = 1 would need t = 1.
inline FiniteSchedule calibrate_cbsf(const PulseChannel& pc, int n_max, double tol = kCalibrationTol) {
  if (n_max < 1) throw InputError("cbsf requires n >= 1");
  if (pc.eta() >= 1.0) {
    throw SolverError(SolverFailure::Infeasible, "a lossless channel needs t = 1, outside (0, 1)");
  }
  const double mu = pc.mu();
  const double target = std::exp(-mu * pc.eta());
  RootProblem rp;
  rp.objective = [&](double t) { return cbsf_vacuum_prob(mu, FiniteSchedule(n_max, t)) - target; };
  rp.derivative = [&](double t) { return cbsf_vacuum_prob_dt(mu, FiniteSchedule(n_max, t)); };
  rp.bracket_lo = kBracketMargin;
  rp.bracket_hi = 1.0 - kBracketMargin;
  rp.x0 = std::pow(pc.eta(), 1.0 / (2.0 * n_max));
  rp.tol = tol;
  rp.max_iter = 100;
  return FiniteSchedule(n_max, find_root(rp));
}

}  // namespace qkds
