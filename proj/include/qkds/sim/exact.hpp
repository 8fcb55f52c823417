#pragma once

#include <algorithm>
#include <cmath>

#include "qkds/types.hpp"

namespace qkds {

struct ExactPhotonStatistics {
  double p_bob_vacuum = 0.0;
  double p_succ = 0.0;
  double p_dc = 0.0;
};

/// Exact (sampling-free) statistics of the photon-level CBS/ACBS process with
/// the Poisson sum truncated at n_max photons.
///
/// For n photons the number of leaks k is Binomial(n, 1 - gamma^2); the leak
/// order is irrelevant to the counts, so this enumerates (n, k) directly.
inline ExactPhotonStatistics exact_photon_statistics(AttackKind kind, double mu, double gamma_sq, int n_max = 20) {
  if (kind != AttackKind::CBS && kind != AttackKind::ACBS) {
    throw InputError("exact enumeration covers cbs and acbs");
  }
  const int cap = kind == AttackKind::ACBS ? 2 : 1;
  const double leak = 1.0 - gamma_sq;
  ExactPhotonStatistics s;
  for (int n = 0; n <= n_max; ++n) {
    const double pn = std::exp(n * std::log(mu) - mu - std::lgamma(n + 1.0));
    for (int k = 0; k <= n; ++k) {
      const double binom = std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
      const double pk = binom * std::pow(leak, k) * std::pow(gamma_sq, n - k);
      const double w = pn * pk;
      const int eve = std::min(k, cap);
      const int bob = n - eve;
      if (bob == 0) {
        s.p_bob_vacuum += w;
        continue;
      }
      // CBS stores its photon; ACBS knows the bit for two photons, half the time for one.
      double gain = 0.0;
      if (kind == AttackKind::CBS) {
        gain = eve >= 1 ? 1.0 : 0.0;
      } else {
        gain = eve == 2 ? 1.0 : (eve == 1 ? 0.5 : 0.0);
      }
      s.p_succ += w * gain;
      s.p_dc += 0.5 * w * (1.0 - std::ldexp(1.0, 1 - bob));
    }
  }
  return s;
}

}  // namespace qkds
