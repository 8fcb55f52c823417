#pragma once

#include <algorithm>
#include <cmath>

#include "qkds/math.hpp"
#include "qkds/models/lossy.hpp"
#include "qkds/models/pns.hpp"
#include "qkds/types.hpp"

// Conditional beam splitting in the infinitesimal-coupling limit. Eve couples
// weakly until she detects one photon or the window closes; gamma^2 is the
// signal's amplitude-squared survival over the full window.

namespace qkds {

/// Smallest transmissivity mimicked without blocking: 1 - ln(1 + mu) / mu.
inline double cbs_min_eta(double mu) {
  require_mu(mu);
  return math::one_minus_log1p_ratio(mu);
}

/// Transmissivity mimicked by a window with survival factor gamma_sq.
inline double cbs_mimicked_eta(double mu, double gamma_sq) {
  require_mu(mu);
  require_gamma_sq(gamma_sq);
  return 1.0 - std::log1p(mu * (1.0 - gamma_sq)) / mu;
}

/// Bob's vacuum probability e^-mu (1 + mu (1 - gamma^2)).
inline double cbs_vacuum_prob(double mu, double gamma_sq) {
  return std::exp(-mu) * (1.0 + mu * (1.0 - gamma_sq));
}

/// Calibrates gamma^2 so that Bob's click rate matches the lossy channel.
/// Below the minimum transmissivity the window is infinite (gamma^2 = 0) and
/// Eve blocks outgoing signals to make up the difference.
inline CouplingSchedule cbs_gamma_sq(const PulseChannel& pc) {
  const double mu = pc.mu();
  const double eta = pc.eta();
  if (eta > cbs_min_eta(mu)) {
    const double g = 1.0 - std::expm1(mu * (1.0 - eta)) / mu;
    return {std::clamp(g, 0.0, 1.0), 1.0};
  }
  // 1 - exp(-mu eta_min) is exactly the multiphoton probability.
  return {0.0, std::min(1.0, channel_nonvacuum(pc) / pns_success(mu))};
}

/// p_succ before blocking: 1 - mu e^-mu (1 - g) - e^{-(1 - g) mu}.
inline double cbs_success_unblocked(double mu, double gamma_sq) {
  const double x = (1.0 - gamma_sq) * mu;
  return -x * std::expm1(-mu) - math::expm1_minus_x(-x);
}

/// Double clicks before blocking, from Bob's coherent amplitude at the moment
/// the splitting stops (first jump or window end).
inline double double_click_cbs_unblocked(double mu, double gamma_sq) {
  const double y = 1.0 - gamma_sq;
  return 0.5 - 0.5 * std::exp(-mu) *
                   (4.0 * std::exp(0.5 * mu) - 1.0 - mu * y - 2.0 * std::exp(0.5 * gamma_sq * mu));
}

inline double cbs_nonvacuum(const PulseChannel& pc) {
  const auto s = cbs_gamma_sq(pc);
  const double mu = pc.mu();
  return s.pass_prob * (-std::expm1(-mu) - mu * (1.0 - s.gamma_sq) * std::exp(-mu));
}

inline double cbs_success(const PulseChannel& pc) {
  const auto s = cbs_gamma_sq(pc);
  return s.pass_prob * cbs_success_unblocked(pc.mu(), s.gamma_sq);
}

inline double cbs_key_fraction(const PulseChannel& pc) {
  if (pc.eta() <= cbs_min_eta(pc.mu())) return 1.0;
  return cbs_success(pc) / channel_nonvacuum(pc);
}

inline double double_click_cbs(const PulseChannel& pc) {
  const auto s = cbs_gamma_sq(pc);
  return s.pass_prob * double_click_cbs_unblocked(pc.mu(), s.gamma_sq);
}

// Directly measured CBS: same splitting, Eve guesses the basis.
inline double dcbs_success(const PulseChannel& pc) { return 0.5 * cbs_success(pc); }
inline double dcbs_key_fraction(const PulseChannel& pc) { return 0.5 * cbs_key_fraction(pc); }

}  // namespace qkds
