#pragma once

#include <algorithm>
#include <cmath>

#include "qkds/models/acbs.hpp"
#include "qkds/models/cbs.hpp"
#include "qkds/types.hpp"

namespace qkds {

/// Weight-averaged statistics of a mixed strategy (no blocking).
struct MixedReport {
  double p_b_nonvac = 0.0;
  double p_succ = 0.0;
  double key_fraction = 0.0;
  double p_dc = 0.0;
  /// sum_i p_i gamma_i^2
  double mean_gamma_sq = 0.0;
  /// gamma^2 of the pure strategy giving the same average P_B[0]. Equal to
  /// mean_gamma_sq for CBS, whose vacuum probability is linear in gamma^2.
  double matched_gamma_sq = 0.0;
};

/// Pure-strategy gamma^2 for which the ACBS vacuum probability equals p0.
inline double acbs_gamma_sq_for_vacuum(double mu, double p0) {
  // e^-mu (1 + u + u^2/2) = p0  =>  u = sqrt(2 p0 e^mu - 1) - 1, u = mu (1 - g)
  const double u = std::sqrt(std::max(0.0, 2.0 * p0 * std::exp(mu) - 1.0)) - 1.0;
  return std::clamp(1.0 - u / mu, 0.0, 1.0);
}

inline MixedReport mixed_strategy_eval(double mu, const MixedStrategy& ms, AttackKind kind) {
  require_mu(mu);
  if (kind != AttackKind::CBS && kind != AttackKind::ACBS) {
    throw InputError("mixed strategies are defined for cbs and acbs only");
  }
  const bool cbs = kind == AttackKind::CBS;
  MixedReport r;
  double vacuum = 0.0;
  for (const auto& c : ms.components()) {
    vacuum += c.weight * (cbs ? cbs_vacuum_prob(mu, c.gamma_sq) : acbs_vacuum_prob(mu, c.gamma_sq));
    r.p_succ += c.weight * (cbs ? cbs_success_unblocked(mu, c.gamma_sq) : acbs_success_unblocked(mu, c.gamma_sq));
    r.p_dc += c.weight *
              (cbs ? double_click_cbs_unblocked(mu, c.gamma_sq) : double_click_acbs_unblocked(mu, c.gamma_sq));
  }
  r.p_b_nonvac = 1.0 - vacuum;
  r.key_fraction = r.p_b_nonvac > 0.0 ? r.p_succ / r.p_b_nonvac : 0.0;
  r.mean_gamma_sq = ms.mean_gamma_sq();
  r.matched_gamma_sq = cbs ? r.mean_gamma_sq : acbs_gamma_sq_for_vacuum(mu, vacuum);
  return r;
}

}  // namespace qkds
