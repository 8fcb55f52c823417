#pragma once

// Brute-force reference values for the tests. Everything here sums over
// photon numbers and binomial splits directly in long double; none of it
// reuses the library's closed forms.

#include <algorithm>
#include <cmath>
#include <functional>

namespace oracle {

using real = long double;

inline real poisson(int n, real mu) { return std::exp(n * std::log(mu) - mu - std::lgamma(n + 1.0L)); }

inline real binom(int n, int k, real p) {
  if (k < 0 || k > n) return 0.0L;
  const real c = std::exp(std::lgamma(n + 1.0L) - std::lgamma(k + 1.0L) - std::lgamma(n - k + 1.0L));
  return c * std::pow(p, k) * std::pow(1.0L - p, n - k);
}

/// Bob's double-click probability for b photons on the wrong-basis branch.
inline real dc_given(int b) { return b < 2 ? 0.0L : 0.5L * (1.0L - std::pow(0.5L, b - 1)); }

struct Stats {
  real vacuum = 0;   // Bob gets nothing
  real success = 0;  // sifted bit known to Eve
  real dc = 0;       // double click
  real nonvac() const { return 1.0L - vacuum; }
};

/// Visits every (photon number n, Eve count e, Bob count b, probability w).
using Visitor = std::function<void(int n, int e, int b, real w)>;
using Splitter = std::function<void(int n, const std::function<void(int e, int b, real p)>&)>;

inline Stats accumulate(real mu, const Splitter& split, const std::function<real(int e, int b)>& gain,
                        int n_max = 60) {
  Stats s;
  for (int n = 0; n <= n_max; ++n) {
    const real pn = poisson(n, mu);
    split(n, [&](int e, int b, real p) {
      const real w = pn * p;
      if (b == 0) {
        s.vacuum += w;
        return;
      }
      s.success += w * gain(e, b);
      s.dc += w * dc_given(b);
    });
  }
  return s;
}

/// Single binomial split: each photon reaches Bob with probability eta.
inline Splitter lossy(real eta) {
  return [eta](int n, const std::function<void(int, int, real)>& f) {
    for (int b = 0; b <= n; ++b) f(n - b, b, binom(n, b, eta));
  };
}

/// Conditional splitting: k of n photons leak (prob 1-g each), Eve keeps at most cap.
inline Splitter conditional(real g, int cap) {
  return [g, cap](int n, const std::function<void(int, int, real)>& f) {
    for (int k = 0; k <= n; ++k) {
      const int e = std::min(k, cap);
      f(e, n - e, binom(n, k, 1.0L - g));
    }
  };
}

/// N unconditional beam splitters with amplitude transmission t, stopping at the
/// first splitter that reflects anything.
inline Splitter finite_chain(real t, int stages) {
  return [t, stages](int n, const std::function<void(int, int, real)>& f) {
    const real r2 = 1.0L - t * t;
    real none_before = 1.0L;  // nothing reflected at earlier stages
    for (int m = 1; m <= stages; ++m) {
      for (int j = 1; j <= n; ++j) f(j, n - j, none_before * binom(n, j, r2));
      none_before *= std::pow(1.0L - r2, n);
    }
    f(0, n, none_before);
  };
}

inline real stored(int e, int) { return e >= 1 ? 1.0L : 0.0L; }
/// Each photon measured in an independent random basis.
inline real per_photon_basis(int e, int) { return 1.0L - std::pow(0.5L, e); }
/// Two photons in different bases reveal the bit; one does so half the time.
inline real two_bases(int e, int) { return e >= 2 ? 1.0L : (e == 1 ? 0.5L : 0.0L); }

inline Stats bs(real mu, real eta) { return accumulate(mu, lossy(eta), stored); }
inline Stats dbs(real mu, real eta) { return accumulate(mu, lossy(eta), per_photon_basis); }
inline Stats cbs(real mu, real g) { return accumulate(mu, conditional(g, 1), stored); }
inline Stats acbs(real mu, real g) { return accumulate(mu, conditional(g, 2), two_bases); }
inline Stats cbsf(real mu, real t, int stages) { return accumulate(mu, finite_chain(t, stages), stored); }

/// Bisection on a monotone function; slow and obviously correct.
inline real bisect(const std::function<real(real)>& f, real lo, real hi, int iters = 200) {
  real flo = f(lo);
  for (int i = 0; i < iters; ++i) {
    const real mid = 0.5L * (lo + hi);
    const real fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5L * (lo + hi);
}

/// gamma^2 that makes the CBS (cap 1) or ACBS (cap 2) vacuum match exp(-mu eta).
inline real coupling_for(real mu, real eta, int cap) {
  const real target = std::exp(-mu * eta);
  return bisect([&](real g) { return accumulate(mu, conditional(g, cap), stored).vacuum - target; }, 0.0L, 1.0L, 120);
}

/// t with the finite-chain vacuum equal to exp(-mu eta).
inline real chain_t_for(real mu, real eta, int stages) {
  const real target = std::exp(-mu * eta);
  return bisect([&](real t) { return cbsf(mu, t, stages).vacuum - target; }, 0.0L, 1.0L, 120);
}

}  // namespace oracle
