#pragma once

#include <cmath>

#include "qkds/math.hpp"
#include "qkds/models/lossy.hpp"
#include "qkds/types.hpp"

// CBS realised with N beam splitters of finite reflectivity r^2 = 1 - t^2.
// After m splitters Bob's signal is a coherent state of mean mu t^{2m}.

namespace qkds {

/// Probability that Eve saw nothing at the first m - 1 splitters:
/// exp(-mu (1 - t^{2(m-1)})).
inline double cbsf_no_jump_prob(double mu, double t, int m) {
  if (m < 1) throw InputError("beam splitter index m must be >= 1");
  return std::exp(-mu * -std::expm1(2.0 * (m - 1) * std::log(t)));
}

/// Probability that Eve's first detection happens at splitter m.
inline double cbsf_click_at(double mu, double t, int m) {
  const double r2 = 1.0 - t * t;
  return cbsf_no_jump_prob(mu, t, m) * -std::expm1(-mu * r2 * std::pow(t, 2.0 * (m - 1)));
}

/// Bob's vacuum probability e^-mu (1 - N + sum_{n<N} exp(mu r^2 t^{2n})).
inline double cbsf_vacuum_prob(double mu, const FiniteSchedule& fs) {
  const double t2 = fs.t() * fs.t();
  const double r2 = 1.0 - t2;
  double sum = 0.0;
  double t2n = 1.0;
  for (int n = 0; n < fs.n_max(); ++n) {
    sum += std::expm1(mu * r2 * t2n);
    t2n *= t2;
  }
  return std::exp(-mu) * (1.0 + sum);
}

/// d/dt of cbsf_vacuum_prob, term by term from the finite sum.
inline double cbsf_vacuum_prob_dt(double mu, const FiniteSchedule& fs) {
  const double t = fs.t();
  const double t2 = t * t;
  const double r2 = 1.0 - t2;
  double sum = 0.0;
  double t2n = 1.0;  // t^{2n}
  for (int n = 0; n < fs.n_max(); ++n) {
    // d/dt [mu (1 - t^2) t^{2n}] = mu (2n t^{2n-1} - (2n + 2) t^{2n+1})
    const double d_exponent = mu * t2n * (2.0 * n / t - (2.0 * n + 2.0) * t);
    sum += std::exp(mu * r2 * t2n) * d_exponent;
    t2n *= t2;
  }
  return std::exp(-mu) * sum;
}

namespace detail {

/// Visits every stopping index m = 1..N with the probability that Bob ends
/// up holding a coherent state of mean mu t^{2m}, split into "Eve clicked at
/// m" and, for m = N only, "Eve never clicked".
template <class Visit>
void cbsf_stopping_distribution(double mu, const FiniteSchedule& fs, Visit visit) {
  const double t2 = fs.t() * fs.t();
  const double r2 = 1.0 - t2;
  double before = 1.0;  // t^{2(m-1)}
  for (int m = 1; m <= fs.n_max(); ++m) {
    const double reached = std::exp(-mu * (1.0 - before));
    const double click = reached * -std::expm1(-mu * r2 * before);
    const double bob_mean = mu * before * t2;
    const double silent = m == fs.n_max() ? reached - click : 0.0;
    visit(click, silent, bob_mean);
    before *= t2;
  }
}

}  // namespace detail

/// Eve clicks at some splitter and Bob still receives a non-vacuum signal.
///
/// Evaluated as the stopping-index sum, all of whose terms are positive; it
/// equals 1 + e^-mu (N - e^{mu t^{2N}} - sum_{n<N} e^{mu r^2 t^{2n}}).
inline double cbsf_success(double mu, const FiniteSchedule& fs) {
  double p = 0.0;
  detail::cbsf_stopping_distribution(mu, fs, [&](double click, double, double bob_mean) {
    p += click * -std::expm1(-bob_mean);
  });
  return p;
}

/// Wrong-basis double clicks, using the same 1/2 basis-mismatch convention as
/// double_click_bs so that N = 1 reproduces the lossy channel with eta = t^2.
inline double cbsf_double_click(double mu, const FiniteSchedule& fs) {
  double p = 0.0;
  detail::cbsf_stopping_distribution(mu, fs, [&](double click, double silent, double bob_mean) {
    p += (click + silent) * double_click_coherent(bob_mean);
  });
  return p;
}

inline double cbsf_nonvacuum(double mu, const FiniteSchedule& fs) {
  // 1 - e^-mu (1 + S) = -expm1(-mu) - e^-mu S
  const double t2 = fs.t() * fs.t();
  double sum = 0.0;
  double t2n = 1.0;
  for (int n = 0; n < fs.n_max(); ++n) {
    sum += std::expm1(mu * (1.0 - t2) * t2n);
    t2n *= t2;
  }
  return -std::expm1(-mu) - std::exp(-mu) * sum;
}

}  // namespace qkds
