#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "qkds/models/acbs.hpp"
#include "qkds/models/cbs.hpp"
#include "qkds/models/lossy.hpp"
#include "qkds/parallel.hpp"
#include "qkds/sweep/grid.hpp"

namespace qkds {

/// Dominance of the no-storage attacks:
///   Region1: f_DCBS >= f_ACBS >= f_DBS
///   Region2: f_ACBS >= f_DCBS >= f_DBS
///   Region3: f_ACBS >= f_DBS  >= f_DCBS
enum class RegionLabel { Region1 = 1, Region2 = 2, Region3 = 3 };

inline std::string_view to_string(RegionLabel r) {
  switch (r) {
    case RegionLabel::Region1: return "1";
    case RegionLabel::Region2: return "2";
    case RegionLabel::Region3: return "3";
  }
  return "?";
}

struct RegionRow {
  double mu = 0.0;
  double eta = 0.0;
  double f_dcbs = 0.0;
  double f_acbs = 0.0;
  double f_dbs = 0.0;
  RegionLabel label = RegionLabel::Region1;
  std::string error;
};

/// Ties go to the lower region number. Relies on f_ACBS >= f_DBS, which makes
/// the three labels exhaustive.
inline RegionLabel classify(double f_dcbs, double f_acbs, double f_dbs) {
  if (f_dcbs >= f_acbs) return RegionLabel::Region1;
  if (f_dcbs >= f_dbs) return RegionLabel::Region2;
  return RegionLabel::Region3;
}

inline RegionRow classify_point(double mu, double eta) {
  RegionRow r;
  r.mu = mu;
  r.eta = eta;
  const PulseChannel pc(mu, eta);
  r.f_dcbs = dcbs_key_fraction(pc);
  r.f_acbs = acbs_key_fraction(pc);
  r.f_dbs = dbs_key_fraction(pc);
  r.label = classify(r.f_dcbs, r.f_acbs, r.f_dbs);
  return r;
}

/// Labels every (mu, eta) point of the grid; attack lists are ignored.
inline std::vector<RegionRow> classify_regions(const GridSpec& gs, unsigned threads = 0) {
  if (gs.mu_values.empty() || gs.eta_values.empty()) throw InputError("grid needs non-empty mu and eta lists");
  auto mus = gs.mu_values;
  auto etas = gs.eta_values;
  std::sort(mus.begin(), mus.end());
  std::sort(etas.begin(), etas.end());
  std::vector<RegionRow> rows;
  for (double mu : mus) {
    for (double eta : etas) {
      RegionRow r;
      r.mu = mu;
      r.eta = eta;
      rows.push_back(r);
    }
  }
  parallel_for(rows.size(), threads ? threads : worker_count(), [&](std::size_t i) {
    try {
      rows[i] = classify_point(rows[i].mu, rows[i].eta);
    } catch (const std::exception& e) {
      rows[i].error = e.what();
    }
  });
  return rows;
}

}  // namespace qkds
