#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "qkds/models/evaluate.hpp"
#include "qkds/parallel.hpp"
#include "qkds/sim/trajectory.hpp"

namespace qkds {

struct McConfig {
  AttackSpec attack;
  PulseChannel pc{0.1, 0.1};
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 0;
  /// Replaces the calibrated schedule when set.
  std::optional<Schedule> schedule_override;
  /// 0 means worker_count().
  unsigned threads = 0;
};

struct Estimand {
  double mean = 0.0;
  double std_err = 0.0;
};

struct McEstimate {
  Estimand p_b_nonvac;
  Estimand p_succ;
  Estimand key_fraction;
  Estimand p_dc;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Integer tallies over a set of trials; sums are exact, hence order-free.
struct McCounts {
  std::uint64_t trials = 0;
  std::uint64_t nonvac = 0;
  std::uint64_t success = 0;
  std::uint64_t double_click = 0;

  McCounts& operator+=(const McCounts& o) {
    trials += o.trials;
    nonvac += o.nonvac;
    success += o.success;
    double_click += o.double_click;
    return *this;
  }
};

inline Estimand bernoulli_estimand(std::uint64_t hits, std::uint64_t trials) {
  const double m = static_cast<double>(hits) / static_cast<double>(trials);
  return {m, std::sqrt(m * (1.0 - m) / static_cast<double>(trials))};
}

/// Ratio of means S/B with delta-method standard error. Every success is also
/// a non-vacuum event, so Cov(S, B) = E[S] (1 - E[B]).
inline Estimand ratio_estimand(std::uint64_t success, std::uint64_t nonvac, std::uint64_t trials) {
  if (nonvac == 0) return {};
  const double n = static_cast<double>(trials);
  const double s = static_cast<double>(success) / n;
  const double b = static_cast<double>(nonvac) / n;
  const double r = s / b;
  const double var_s = s * (1.0 - s);
  const double var_b = b * (1.0 - b);
  const double cov = s * (1.0 - b);
  const double var = (var_s - 2.0 * r * cov + r * r * var_b) / (b * b * n);
  return {r, std::sqrt(std::max(0.0, var))};
}

inline McCounts run_trials(const McConfig& cfg, const Schedule& schedule, std::uint64_t first, std::uint64_t last) {
  McCounts c;
  for (std::uint64_t i = first; i < last; ++i) {
    CounterRng rng(cfg.seed, i);
    const auto o = sample_trajectory(cfg.attack, cfg.pc, schedule, rng);
    ++c.trials;
    if (o.bob_received() > 0) ++c.nonvac;
    c.success += static_cast<std::uint64_t>(success_weight(cfg.attack.kind, o));
    if (o.bob_double_click) ++c.double_click;
  }
  return c;
}

/// Monte Carlo estimate of an attack's statistics. Trial i always uses stream
/// (seed, i), so the result is bit-identical for any thread count.
inline McEstimate estimate(const McConfig& cfg) {
  if (cfg.trials == 0) throw InputError("trials must be >= 1");
  const Schedule schedule = cfg.schedule_override ? *cfg.schedule_override : calibrate(cfg.attack, cfg.pc);

  constexpr std::uint64_t kBlock = 1 << 14;
  const std::uint64_t blocks = (cfg.trials + kBlock - 1) / kBlock;
  std::vector<McCounts> partial(blocks);
  parallel_for(blocks, cfg.threads ? cfg.threads : worker_count(), [&](std::size_t b) {
    const std::uint64_t first = b * kBlock;
    partial[b] = run_trials(cfg, schedule, first, std::min(cfg.trials, first + kBlock));
  });
  McCounts total;
  for (const auto& p : partial) total += p;

  McEstimate e;
  e.trials = cfg.trials;
  e.seed = cfg.seed;
  e.p_b_nonvac = bernoulli_estimand(total.nonvac, total.trials);
  e.p_succ = bernoulli_estimand(total.success, total.trials);
  e.key_fraction = ratio_estimand(total.success, total.nonvac, total.trials);
  e.p_dc = bernoulli_estimand(total.double_click, total.trials);
  return e;
}

/// (estimate - reference) / std_err, or nothing when the error is zero.
inline std::optional<double> z_score(const Estimand& e, double reference) {
  if (!(e.std_err > 0.0)) return std::nullopt;
  return (e.mean - reference) / e.std_err;
}

}  // namespace qkds
