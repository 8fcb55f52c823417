#pragma once

#include <cmath>

#include "qkds/math.hpp"
#include "qkds/types.hpp"

// Lossy channel and the plain beam splitting attacks (stored and directly measured).

namespace qkds {

/// P_B[not 0] = 1 - exp(-mu eta): Bob's non-vacuum probability over the lossy channel.
inline double channel_nonvacuum(const PulseChannel& pc) { return -std::expm1(-pc.mu() * pc.eta()); }

/// Bob and Eve both receive at least one photon when the loss is a beam splitter.
inline double bs_success(const PulseChannel& pc) {
  return channel_nonvacuum(pc) * -std::expm1(-pc.mu() * (1.0 - pc.eta()));
}

inline double bs_key_fraction(const PulseChannel& pc) { return -std::expm1(-(1.0 - pc.eta()) * pc.mu()); }

/// Directly measured BS: every photon in Eve's arm is measured in an
/// independently chosen basis, so she fails only when all of them are wrong.
inline double dbs_success(const PulseChannel& pc) {
  return channel_nonvacuum(pc) * -std::expm1(-0.5 * pc.mu() * (1.0 - pc.eta()));
}

inline double dbs_key_fraction(const PulseChannel& pc) {
  return -std::expm1(-0.5 * pc.mu() * (1.0 - pc.eta()));
}

/// Wrong-basis double click of a coherent signal with mean photon number m at
/// Bob: each arm receives a coherent state of mean m/2. The 1/2 prefactor is
/// the basis-mismatch probability.
inline double double_click_coherent(double bob_mean) {
  return 0.5 * math::square(std::expm1(-0.5 * bob_mean));
}

/// Double clicks for the lossy channel (identical under BS and DBS).
inline double double_click_bs(const PulseChannel& pc) { return double_click_coherent(pc.mu() * pc.eta()); }

}  // namespace qkds
