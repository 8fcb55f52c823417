#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qkds/models/evaluate.hpp"
#include "qkds/parallel.hpp"
#include "qkds/sweep/grid.hpp"

namespace qkds {

/// One grid cell. Exactly one of report / error is meaningful.
struct SweepRow {
  AttackSpec attack;
  double mu = 0.0;
  double eta = 0.0;
  std::optional<AttackReport> report;
  std::string error;
};

inline void validate(const GridSpec& gs) {
  if (gs.mu_values.empty() || gs.eta_values.empty() || gs.attacks.empty()) {
    throw InputError("grid needs non-empty mu, eta and attack lists");
  }
  const bool has_cbsf = std::find(gs.attacks.begin(), gs.attacks.end(), AttackKind::CBSF) != gs.attacks.end();
  if (has_cbsf && gs.cbsf_n_values.empty()) throw InputError("cbsf in a sweep needs at least one n value");
  for (int n : gs.cbsf_n_values) {
    if (n < 1) throw InputError("cbsf n values must be >= 1");
  }
}

inline std::vector<AttackSpec> expand_attacks(const GridSpec& gs) {
  std::vector<AttackSpec> specs;
  for (AttackKind k : gs.attacks) {
    if (k == AttackKind::CBSF) {
      for (int n : gs.cbsf_n_values) specs.emplace_back(k, n);
    } else {
      specs.emplace_back(k);
    }
  }
  std::sort(specs.begin(), specs.end());
  specs.erase(std::unique(specs.begin(), specs.end()), specs.end());
  return specs;
}

/// Evaluates every (attack, mu, eta) cell. Rows come out ordered by attack
/// (declaration order, then CBSF n), mu, eta. A cell that fails validation or
/// calibration yields an error row; the sweep itself never aborts on one.
inline std::vector<SweepRow> sweep(const GridSpec& gs, unsigned threads = 0) {
  validate(gs);
  auto mus = gs.mu_values;
  auto etas = gs.eta_values;
  std::sort(mus.begin(), mus.end());
  std::sort(etas.begin(), etas.end());

  std::vector<SweepRow> rows;
  for (const auto& a : expand_attacks(gs)) {
    for (double mu : mus) {
      for (double eta : etas) rows.push_back(SweepRow{a, mu, eta, std::nullopt, {}});
    }
  }
  parallel_for(rows.size(), threads ? threads : worker_count(), [&](std::size_t i) {
    auto& row = rows[i];
    try {
      row.report = evaluate(row.attack, PulseChannel(row.mu, row.eta));
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });
  return rows;
}

}  // namespace qkds
