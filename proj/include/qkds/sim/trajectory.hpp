#pragma once

#include <algorithm>
#include <string>
#include <variant>

#include "qkds/sim/rng.hpp"
#include "qkds/types.hpp"

// Photon-level Monte Carlo of every attack.
//
// For coherent input the quantum-jump process has an exact photon picture:
// the pulse holds n ~ Poisson(mu) photons, each of which independently
// survives Eve's whole coupling window with probability gamma^2 and otherwise
// leaks at an independent, uniformly ordered moment. CBS stops at the first
// leak, ACBS at the second; everything not leaked goes to Bob. No time step
// or epsilon/tau pair is needed.

namespace qkds {

struct TrajectoryOutcome {
  int n_initial = 0;
  int eve_photons = 0;
  int bob_photons = 0;
  /// Eve suppressed the outgoing signal; Bob-side statistics treat it as vacuum.
  bool blocked = false;
  /// Eve's photons measured in Alice's basis (no-storage attacks only).
  int eve_correct_basis_hits = 0;
  /// Both of Bob's detectors fired; only possible on the wrong-basis branch.
  bool bob_double_click = false;

  int bob_received() const noexcept { return blocked ? 0 : bob_photons; }
};

namespace detail {

inline double coupling_pass(const Schedule& s) {
  if (const auto* c = std::get_if<CouplingSchedule>(&s)) return c->pass_prob;
  return 1.0;
}

template <class T>
const T& schedule_as(const Schedule& s, const char* what) {
  if (const auto* v = std::get_if<T>(&s)) return *v;
  throw InputError(std::string("attack needs a ") + what + " schedule");
}

}  // namespace detail

/// Samples one signal through the attack. Deterministic given the stream state.
inline TrajectoryOutcome sample_trajectory(const AttackSpec& attack, const PulseChannel& pc,
                                           const Schedule& schedule, CounterRng& rng) {
  TrajectoryOutcome o;
  const int n = rng.poisson(pc.mu());
  o.n_initial = n;

  switch (attack.kind) {
    case AttackKind::Channel:
      o.bob_photons = rng.binomial(n, pc.eta());
      break;
    case AttackKind::BS:
    case AttackKind::DBS:
      o.bob_photons = rng.binomial(n, pc.eta());
      o.eve_photons = n - o.bob_photons;
      break;
    case AttackKind::CBS:
    case AttackKind::DCBS:
    case AttackKind::ACBS: {
      const auto& cs = detail::schedule_as<CouplingSchedule>(schedule, "coupling");
      const int leaks = n - rng.binomial(n, cs.gamma_sq);
      const int cap = attack.kind == AttackKind::ACBS ? 2 : 1;
      o.eve_photons = std::min(leaks, cap);
      o.bob_photons = n - o.eve_photons;
      break;
    }
    case AttackKind::CBSF: {
      const auto& fs = detail::schedule_as<FiniteSchedule>(schedule, "finite");
      int remaining = n;
      for (int m = 1; m <= fs.n_max() && remaining > 0; ++m) {
        const int reflected = rng.binomial(remaining, fs.reflectivity());
        remaining -= reflected;
        if (reflected > 0) {
          o.eve_photons = reflected;
          break;
        }
      }
      o.bob_photons = remaining;
      break;
    }
    case AttackKind::PNS:
      o.eve_photons = n >= 2 ? 1 : 0;
      o.bob_photons = n - o.eve_photons;
      break;
    case AttackKind::PNSNoStorage:
      o.eve_photons = n >= 1 ? std::min(n - 1, 2) : 0;
      o.bob_photons = n - o.eve_photons;
      break;
  }

  // Blocking acts on outgoing signals regardless of content.
  double pass = 1.0;
  if (attack.kind == AttackKind::PNS || attack.kind == AttackKind::PNSNoStorage) {
    pass = detail::schedule_as<PnsBlocking>(schedule, "pns blocking").pass_for(n);
  } else {
    pass = detail::coupling_pass(schedule);
  }
  o.blocked = !rng.bernoulli(pass);

  if (!needs_storage(attack.kind) && attack.kind != AttackKind::Channel && o.eve_photons > 0) {
    const bool two_bases = attack.kind == AttackKind::ACBS || attack.kind == AttackKind::PNSNoStorage;
    if (two_bases && o.eve_photons == 2) {
      o.eve_correct_basis_hits = 1;  // one photon per basis, exactly one matches
    } else {
      o.eve_correct_basis_hits = rng.binomial(o.eve_photons, 0.5);
    }
  }

  const bool wrong_basis = rng.bernoulli(0.5);
  const int bob = o.bob_received();
  if (wrong_basis && bob >= 1) {
    const int arm_a = rng.binomial(bob, 0.5);
    o.bob_double_click = arm_a >= 1 && arm_a < bob;
  }
  return o;
}

/// Whether this trajectory contributes a sifted bit known to Eve. Bob must be
/// non-vacuum; stored photons always reveal the bit, directly measured ones
/// only when at least one was measured in Alice's basis.
inline int success_weight(AttackKind kind, const TrajectoryOutcome& o) {
  if (kind == AttackKind::Channel || o.bob_received() == 0) return 0;
  if (needs_storage(kind)) return o.eve_photons >= 1 ? 1 : 0;
  return o.eve_correct_basis_hits >= 1 ? 1 : 0;
}

}  // namespace qkds
