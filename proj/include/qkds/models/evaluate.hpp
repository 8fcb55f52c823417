#pragma once

#include <optional>

#include "qkds/models/acbs.hpp"
#include "qkds/models/cbs.hpp"
#include "qkds/models/cbsf.hpp"
#include "qkds/models/lossy.hpp"
#include "qkds/models/pns.hpp"
#include "qkds/solvers/calibrate.hpp"
#include "qkds/types.hpp"

namespace qkds {

/// f_attack / f_baseline, or nothing when the baseline fraction is zero.
inline std::optional<double> performance_quotient(double f_attack, double f_baseline) {
  if (!(f_baseline > 0.0)) return std::nullopt;
  return f_attack / f_baseline;
}

/// The attack parameters Eve needs to mimic the channel (pc).
inline Schedule calibrate(const AttackSpec& attack, const PulseChannel& pc) {
  switch (attack.kind) {
    case AttackKind::CBS:
    case AttackKind::DCBS: return cbs_gamma_sq(pc);
    case AttackKind::ACBS: return acbs_gamma_sq(pc);
    case AttackKind::CBSF: return calibrate_cbsf(pc, attack.n_max);
    case AttackKind::PNS: return pns_blocking(pc, true);
    case AttackKind::PNSNoStorage: return pns_blocking(pc, false);
    default: return std::monostate{};
  }
}

inline double baseline_key_fraction(Baseline b, const PulseChannel& pc) {
  switch (b) {
    case Baseline::BS: return bs_key_fraction(pc);
    case Baseline::DBS: return dbs_key_fraction(pc);
    case Baseline::None: break;
  }
  return 0.0;
}

/// Calibrated closed-form report for one attack at one scenario.
inline AttackReport evaluate(const AttackSpec& attack, const PulseChannel& pc) {
  AttackReport r;
  r.attack = attack;
  r.channel = pc;
  r.baseline = baseline_for(attack.kind);
  r.schedule = calibrate(attack, pc);
  const double mu = pc.mu();

  switch (attack.kind) {
    case AttackKind::Channel:
      r.p_b_nonvac = channel_nonvacuum(pc);
      r.p_dc = double_click_bs(pc);
      break;
    case AttackKind::BS:
      r.p_b_nonvac = channel_nonvacuum(pc);
      r.p_succ = bs_success(pc);
      r.key_fraction = bs_key_fraction(pc);
      r.p_dc = double_click_bs(pc);
      break;
    case AttackKind::DBS:
      r.p_b_nonvac = channel_nonvacuum(pc);
      r.p_succ = dbs_success(pc);
      r.key_fraction = dbs_key_fraction(pc);
      r.p_dc = double_click_bs(pc);
      break;
    case AttackKind::PNS:
    case AttackKind::PNSNoStorage: {
      const bool storage = attack.kind == AttackKind::PNS;
      const auto s = storage ? detail::pns_stored(pc) : detail::pns_unstored(pc);
      r.p_b_nonvac = s.p_b_nonvac;
      r.p_succ = s.p_succ;
      r.key_fraction = pns_key_fraction(pc, storage);
      r.p_dc = s.p_dc;
      r.extrapolated = !storage;
      break;
    }
    case AttackKind::CBS:
    case AttackKind::DCBS: {
      const auto& s = std::get<CouplingSchedule>(r.schedule);
      const double half = attack.kind == AttackKind::DCBS ? 0.5 : 1.0;
      r.p_b_nonvac = cbs_nonvacuum(pc);
      r.p_succ = half * s.pass_prob * cbs_success_unblocked(mu, s.gamma_sq);
      r.key_fraction = half * cbs_key_fraction(pc);
      r.p_dc = s.pass_prob * double_click_cbs_unblocked(mu, s.gamma_sq);
      break;
    }
    case AttackKind::ACBS: {
      const auto& s = std::get<CouplingSchedule>(r.schedule);
      r.p_b_nonvac = acbs_nonvacuum(pc);
      r.p_succ = s.pass_prob * acbs_success_unblocked(mu, s.gamma_sq);
      r.key_fraction = acbs_key_fraction(pc);
      r.p_dc = s.pass_prob * double_click_acbs_unblocked(mu, s.gamma_sq);
      break;
    }
    case AttackKind::CBSF: {
      const auto& fs = std::get<FiniteSchedule>(r.schedule);
      r.p_b_nonvac = cbsf_nonvacuum(mu, fs);
      r.p_succ = cbsf_success(mu, fs);
      r.key_fraction = r.p_succ / r.p_b_nonvac;
      r.p_dc = cbsf_double_click(mu, fs);
      break;
    }
  }
  if (r.key_fraction && r.baseline != Baseline::None) {
    r.quotient = performance_quotient(*r.key_fraction, baseline_key_fraction(r.baseline, pc));
  }
  return r;
}

}  // namespace qkds
