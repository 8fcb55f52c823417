#pragma once

#include <algorithm>
#include <cmath>

#include "qkds/math.hpp"
#include "qkds/models/lossy.hpp"
#include "qkds/types.hpp"

namespace qkds {

/// Probability that a Poissonian pulse carries two or more photons:
/// 1 - e^-mu - mu e^-mu.
inline double pns_success(double mu) {
  require_mu(mu);
  // -mu expm1(-mu) - (e^-mu - 1 + mu); both terms are O(mu^2) and positive.
  return -mu * std::expm1(-mu) - math::expm1_minus_x(-mu);
}

/// Blocking policy that keeps Bob's click rate at 1 - exp(-mu eta).
///
/// Signals are blocked in order of increasing value to Eve: single photons
/// first, then (without storage) two-photon signals, then uniformly among the
/// rest. With storage every multiphoton signal is equally valuable, so n = 2
/// and n >= 3 share one pass probability.
inline PnsBlocking pns_blocking(const PulseChannel& pc, bool storage) {
  const double mu = pc.mu();
  const double target = channel_nonvacuum(pc);
  const double single = mu * std::exp(-mu);
  PnsBlocking b;
  if (storage) {
    const double multi = pns_success(mu);
    if (target >= multi) {
      b.pass_single = std::clamp((target - multi) / single, 0.0, 1.0);
    } else {
      b.pass_single = 0.0;
      b.pass_double = b.pass_multi = target / multi;
    }
    return b;
  }
  const double two = math::poisson_pmf(2, mu);
  const double three_up = math::poisson_tail(3, mu);
  if (target >= two + three_up) {
    b.pass_single = std::clamp((target - two - three_up) / single, 0.0, 1.0);
  } else if (target >= three_up) {
    b.pass_single = 0.0;
    b.pass_double = (target - three_up) / two;
  } else {
    b.pass_single = b.pass_double = 0.0;
    b.pass_multi = target / three_up;
  }
  return b;
}

namespace detail {

struct PnsStatistics {
  double p_b_nonvac = 0.0;
  double p_succ = 0.0;
  double p_dc = 0.0;
};

/// Sums the photon-number classes. Eve removes `take(n)` photons and gains
/// `gain(n)` bit-knowledge weight; Bob receives the rest over a lossless line.
template <class Take, class Gain>
PnsStatistics pns_statistics(double mu, const PnsBlocking& b, Take take, Gain gain) {
  PnsStatistics s;
  double pmf = std::exp(-mu);
  for (int n = 1; n < 400; ++n) {
    pmf *= mu / n;
    const double w = pmf * b.pass_for(n);
    const int bob = n - take(n);
    if (bob >= 1) {
      s.p_b_nonvac += w;
      s.p_succ += w * gain(n);
      // Wrong basis: each photon picks an arm with probability 1/2.
      s.p_dc += 0.5 * w * (1.0 - std::ldexp(1.0, 1 - bob));
    }
    if (n > mu && pmf < 1e-20) break;
  }
  return s;
}

inline PnsStatistics pns_stored(const PulseChannel& pc) {
  const auto b = pns_blocking(pc, true);
  return pns_statistics(
      pc.mu(), b, [](int n) { return n >= 2 ? 1 : 0; }, [](int n) { return n >= 2 ? 1.0 : 0.0; });
}

/// No-storage model: Eve extracts min(n - 1, 2) photons and measures two in
/// different bases (bit certain) or one in a random basis (bit with prob 1/2).
inline PnsStatistics pns_unstored(const PulseChannel& pc) {
  const auto b = pns_blocking(pc, false);
  return pns_statistics(
      pc.mu(), b, [](int n) { return std::min(n - 1, 2); },
      [](int n) { return n >= 3 ? 1.0 : (n == 2 ? 0.5 : 0.0); });
}

}  // namespace detail

/// Fraction of Bob's key known to Eve under the PNS attack.
///
/// With storage this is min(1, pns_success(mu) / channel_nonvacuum). The
/// no-storage variant is a modelling extrapolation (see pns_blocking).
inline double pns_key_fraction(const PulseChannel& pc, bool storage) {
  if (storage) return std::min(1.0, pns_success(pc.mu()) / channel_nonvacuum(pc));
  const auto s = detail::pns_unstored(pc);
  return s.p_succ / s.p_b_nonvac;
}

}  // namespace qkds
