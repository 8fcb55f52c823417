#pragma once

#include <algorithm>
#include <cmath>

#include "qkds/math.hpp"
#include "qkds/models/lossy.hpp"
#include "qkds/types.hpp"

// Adapted CBS: splitting continues until a second photon has been extracted,
// and the two photons are measured in different bases.

namespace qkds {

inline double acbs_min_eta(double mu) {
  require_mu(mu);
  return 1.0 - std::log1p(mu + 0.5 * mu * mu) / mu;
}

inline double acbs_mimicked_eta(double mu, double gamma_sq) {
  require_mu(mu);
  require_gamma_sq(gamma_sq);
  const double u = mu * (1.0 - gamma_sq);
  return 1.0 - std::log1p(u + 0.5 * u * u) / mu;
}

/// e^-mu (1 + mu y + (mu y)^2 / 2) with y = 1 - gamma^2.
inline double acbs_vacuum_prob(double mu, double gamma_sq) {
  const double u = mu * (1.0 - gamma_sq);
  return std::exp(-mu) * (1.0 + u + 0.5 * u * u);
}

inline CouplingSchedule acbs_gamma_sq(const PulseChannel& pc) {
  const double mu = pc.mu();
  const double eta = pc.eta();
  if (eta > acbs_min_eta(mu)) {
    // sqrt(1 + a) - 1 written as a / (sqrt(1 + a) + 1)
    const double a = 2.0 * std::expm1(mu * (1.0 - eta));
    const double y = a / (std::sqrt(1.0 + a) + 1.0) / mu;
    return {std::clamp(1.0 - y, 0.0, 1.0), 1.0};
  }
  return {0.0, std::min(1.0, channel_nonvacuum(pc) / math::poisson_tail(3, mu))};
}

/// Success before blocking: two extractions reveal the bit, one reveals it
/// with probability 1/2, and Bob must still hold a photon.
inline double acbs_success_unblocked(double mu, double gamma_sq) {
  const double u = mu * (1.0 - gamma_sq);
  const double em = std::exp(-mu);
  return -std::expm1(-u) - 0.5 * u * (em + std::exp(-u)) - 0.5 * u * u * em;
}

inline double double_click_acbs_unblocked(double mu, double gamma_sq) {
  const double u = mu * (1.0 - gamma_sq);
  return 0.5 - 0.5 * std::exp(-mu) *
                   (8.0 * std::exp(0.5 * mu) - 1.0 - u - 0.5 * u * u -
                    2.0 * std::exp(0.5 * gamma_sq * mu) * (3.0 + u));
}

inline double acbs_nonvacuum(const PulseChannel& pc) {
  const auto s = acbs_gamma_sq(pc);
  return s.pass_prob * (1.0 - acbs_vacuum_prob(pc.mu(), s.gamma_sq));
}

inline double acbs_success(const PulseChannel& pc) {
  const auto s = acbs_gamma_sq(pc);
  return s.pass_prob * acbs_success_unblocked(pc.mu(), s.gamma_sq);
}

inline double acbs_key_fraction(const PulseChannel& pc) {
  if (pc.eta() <= acbs_min_eta(pc.mu())) return 1.0;
  return acbs_success(pc) / channel_nonvacuum(pc);
}

inline double double_click_acbs(const PulseChannel& pc) {
  const auto s = acbs_gamma_sq(pc);
  return s.pass_prob * double_click_acbs_unblocked(pc.mu(), s.gamma_sq);
}

}  // namespace qkds
