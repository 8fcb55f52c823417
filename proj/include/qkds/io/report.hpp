#pragma once

#include <string>
#include <variant>
#include <vector>

#include "qkds/io/format.hpp"
#include "qkds/sim/estimate.hpp"
#include "qkds/sweep/regions.hpp"
#include "qkds/sweep/sweep.hpp"
#include "qkds/types.hpp"

namespace qkds::io {

inline constexpr const char* kSweepCsvHeader =
    "attack,mu,eta,n,gamma_sq,t,block_prob,p_b_nonvac,p_succ,key_fraction,p_dc,quotient";

namespace detail {

struct ScheduleFields {
  std::optional<double> gamma_sq;
  std::optional<double> t;
  std::optional<double> block_prob;
};

inline ScheduleFields schedule_fields(const Schedule& s) {
  ScheduleFields f;
  if (const auto* c = std::get_if<CouplingSchedule>(&s)) {
    f.gamma_sq = c->gamma_sq;
    f.block_prob = c->block_prob();
  } else if (const auto* fs = std::get_if<FiniteSchedule>(&s)) {
    f.t = fs->t();
  }
  return f;
}

inline std::string attack_label(const AttackSpec& a) { return std::string(to_string(a.kind)); }

}  // namespace detail

inline std::string csv_row(const SweepRow& row) {
  std::string n = row.attack.kind == AttackKind::CBSF ? std::to_string(row.attack.n_max) : "";
  std::string out = fmt::format("{},{},{},{}", detail::attack_label(row.attack), exact(row.mu), exact(row.eta), n);
  if (!row.report) return out + ",,,,,,,,";
  const auto& r = *row.report;
  const auto s = detail::schedule_fields(r.schedule);
  out += fmt::format(",{},{},{},{},{},{},{},{}", exact_or_empty(s.gamma_sq), exact_or_empty(s.t),
                     exact_or_empty(s.block_prob), exact(r.p_b_nonvac), exact(r.p_succ),
                     exact_or_empty(r.key_fraction), exact(r.p_dc), exact_or_empty(r.quotient));
  return out;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = std::string(kSweepCsvHeader) + "\n";
  for (const auto& r : rows) out += csv_row(r) + "\n";
  return out;
}

/// JSON object with the CSV field names (missing values are null).
inline JsonObject report_json(const AttackReport& r) {
  const auto s = detail::schedule_fields(r.schedule);
  JsonObject o;
  o.string("attack", detail::attack_label(r.attack))
      .number("mu", r.channel.mu())
      .number("eta", r.channel.eta());
  if (r.attack.kind == AttackKind::CBSF) {
    o.integer("n", r.attack.n_max);
  } else {
    o.null("n");
  }
  o.number("gamma_sq", s.gamma_sq)
      .number("t", s.t)
      .number("block_prob", s.block_prob)
      .number("p_b_nonvac", r.p_b_nonvac)
      .number("p_succ", r.p_succ)
      .number("key_fraction", r.key_fraction)
      .number("p_dc", r.p_dc)
      .number("quotient", r.quotient);
  return o;
}

inline JsonObject sweep_row_json(const SweepRow& row) {
  if (row.report) {
    auto o = report_json(*row.report);
    if (row.report->extrapolated) o.boolean("extrapolated", true);
    return o;
  }
  JsonObject o;
  o.string("attack", detail::attack_label(row.attack)).number("mu", row.mu).number("eta", row.eta);
  if (row.attack.kind == AttackKind::CBSF) {
    o.integer("n", row.attack.n_max);
  } else {
    o.null("n");
  }
  for (const char* k : {"gamma_sq", "t", "block_prob", "p_b_nonvac", "p_succ", "key_fraction", "p_dc", "quotient"}) {
    o.null(k);
  }
  o.string("error", row.error);
  return o;
}

inline std::string sweep_json(const std::vector<SweepRow>& rows) {
  std::vector<JsonObject> items;
  items.reserve(rows.size());
  for (const auto& r : rows) items.push_back(sweep_row_json(r));
  return json_array(items);
}

inline std::string regions_csv(const std::vector<RegionRow>& rows) {
  std::string out = "mu,eta,f_dcbs,f_acbs,f_dbs,region\n";
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      out += fmt::format("{},{},,,,\n", exact(r.mu), exact(r.eta));
      continue;
    }
    out += fmt::format("{},{},{},{},{},{}\n", exact(r.mu), exact(r.eta), exact(r.f_dcbs), exact(r.f_acbs),
                       exact(r.f_dbs), to_string(r.label));
  }
  return out;
}

inline std::string regions_json(const std::vector<RegionRow>& rows) {
  std::vector<JsonObject> items;
  for (const auto& r : rows) {
    JsonObject o;
    o.number("mu", r.mu).number("eta", r.eta);
    if (r.error.empty()) {
      o.number("f_dcbs", r.f_dcbs).number("f_acbs", r.f_acbs).number("f_dbs", r.f_dbs);
      o.integer("region", static_cast<int>(r.label));
    } else {
      o.string("error", r.error);
    }
    items.push_back(o);
  }
  return json_array(items);
}

/// key: value block with 6 significant digits.
inline std::string report_text(const AttackReport& r) {
  const auto s = detail::schedule_fields(r.schedule);
  std::string out;
  auto line = [&](const std::string& k, const std::string& v) { out += fmt::format("{:<16}{}\n", k + ":", v); };
  auto opt = [](const std::optional<double>& v) { return v ? brief(*v) : std::string("undefined"); };
  line("attack", detail::attack_label(r.attack));
  if (r.attack.kind == AttackKind::CBSF) line("n", std::to_string(r.attack.n_max));
  line("mu", brief(r.channel.mu()));
  line("eta", brief(r.channel.eta()));
  if (s.gamma_sq) line("gamma_sq", brief(*s.gamma_sq));
  if (s.t) line("t", brief(*s.t));
  if (s.block_prob) line("block_prob", brief(*s.block_prob));
  line("p_b_nonvac", brief(r.p_b_nonvac));
  line("p_succ", brief(r.p_succ));
  line("key_fraction", opt(r.key_fraction));
  line("p_dc", brief(r.p_dc));
  if (r.baseline != Baseline::None) line(fmt::format("quotient_vs_{}", to_string(r.baseline)), opt(r.quotient));
  if (r.extrapolated) line("note", "extrapolated model (no-storage PNS), not a derived result");
  return out;
}

struct SimulationComparison {
  AttackReport closed_form;
  McEstimate mc;
};

inline std::string simulation_text(const SimulationComparison& c) {
  const auto& a = c.closed_form.attack;
  const std::string label =
      a.kind == AttackKind::CBSF ? fmt::format("{}  n: {}", detail::attack_label(a), a.n_max) : detail::attack_label(a);
  std::string out = fmt::format("attack: {}  mu: {}  eta: {}  trials: {}  seed: {}\n", label,
                                brief(c.closed_form.channel.mu()),
                                brief(c.closed_form.channel.eta()), c.mc.trials, c.mc.seed);
  out += fmt::format("{:<14}{:>14}{:>14}{:>14}{:>10}\n", "estimand", "mc_mean", "mc_std_err", "closed_form", "z");
  auto row = [&](const char* name, const Estimand& e, std::optional<double> ref) {
    std::string z = "n/a";
    if (ref) {
      if (auto zs = z_score(e, *ref)) z = fmt::format("{:.3f}", *zs);
    }
    out += fmt::format("{:<14}{:>14}{:>14}{:>14}{:>10}\n", name, brief(e.mean), brief(e.std_err),
                       ref ? brief(*ref) : std::string("undefined"), z);
  };
  row("p_b_nonvac", c.mc.p_b_nonvac, c.closed_form.p_b_nonvac);
  row("p_succ", c.mc.p_succ, c.closed_form.p_succ);
  row("key_fraction", c.mc.key_fraction, c.closed_form.key_fraction);
  row("p_dc", c.mc.p_dc, c.closed_form.p_dc);
  return out;
}

inline JsonObject simulation_json(const SimulationComparison& c) {
  auto estimand = [](const Estimand& e, std::optional<double> ref) {
    JsonObject o;
    o.number("mean", e.mean).number("std_err", e.std_err).number("closed_form", ref);
    std::optional<double> z;
    if (ref) z = z_score(e, *ref);
    o.number("z", z);
    return o;
  };
  JsonObject o;
  o.string("attack", detail::attack_label(c.closed_form.attack));
  if (c.closed_form.attack.kind == AttackKind::CBSF) o.integer("n", c.closed_form.attack.n_max);
  o.number("mu", c.closed_form.channel.mu())
      .number("eta", c.closed_form.channel.eta())
      .integer_u("trials", c.mc.trials)
      .integer_u("seed", c.mc.seed)
      .object("p_b_nonvac", estimand(c.mc.p_b_nonvac, c.closed_form.p_b_nonvac))
      .object("p_succ", estimand(c.mc.p_succ, c.closed_form.p_succ))
      .object("key_fraction", estimand(c.mc.key_fraction, c.closed_form.key_fraction))
      .object("p_dc", estimand(c.mc.p_dc, c.closed_form.p_dc));
  return o;
}

}  // namespace qkds::io
