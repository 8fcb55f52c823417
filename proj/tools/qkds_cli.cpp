// qkds: evaluate, sweep, calibrate and simulate eavesdropping attacks on
// weak-coherent-pulse QKD.
//
// Exit codes: 0 success, 1 I/O failure, 2 usage or validation error,
// 3 numerical failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qkds/io/file.hpp"
#include "qkds/io/format.hpp"
#include "qkds/io/report.hpp"
#include "qkds/io/scenario.hpp"
#include "qkds/qkds.hpp"

namespace {

using qkds::io::OutputFormat;

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct ScenarioArgs {
  double mu = 0.0;
  double eta = 0.0;
  std::string attack;
  int n = 0;
  std::string format = "text";
  std::string output;
  std::string save_scenario;
};

void add_scenario_flags(CLI::App* cmd, ScenarioArgs& a) {
  cmd->add_option("--mu", a.mu, "mean photon number of Alice's pulses")->required();
  cmd->add_option("--eta", a.eta, "channel transmissivity")->required();
  cmd->add_option("--attack", a.attack, "channel, bs, dbs, pns, pns-ns, cbs, dcbs, acbs or cbsf")->required();
  cmd->add_option("--n", a.n, "number of beam splitters (cbsf)");
  cmd->add_option("--format", a.format, "text or json");
  cmd->add_option("--output", a.output, "write to this file instead of stdout");
  cmd->add_option("--save-scenario", a.save_scenario, "also write the invocation as a scenario file");
}

qkds::AttackSpec attack_from(const ScenarioArgs& a) {
  const auto kind = qkds::parse_attack_kind(a.attack);
  if (kind == qkds::AttackKind::CBSF && a.n < 1) throw qkds::InputError("--attack cbsf requires --n >= 1");
  return {kind, a.n};
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
  } else {
    qkds::io::write_file_atomic(path, text);
  }
}

qkds::io::ScenarioFile scenario_from(const ScenarioArgs& a, std::optional<std::uint64_t> trials, std::uint64_t seed) {
  qkds::io::ScenarioFile s;
  s.mu = a.mu;
  s.eta = a.eta;
  s.attacks = {a.attack};
  if (a.n > 0) s.n = {a.n};
  s.trials = trials;
  s.seed = seed;
  s.output = a.output;
  s.format = qkds::io::parse_output_format(a.format);
  return s;
}

std::string render_reports(const std::vector<qkds::AttackReport>& reports, OutputFormat format) {
  if (format == OutputFormat::Json) {
    if (reports.size() == 1) return qkds::io::report_json(reports.front()).dump() + "\n";
    std::vector<qkds::io::JsonObject> items;
    for (const auto& r : reports) items.push_back(qkds::io::report_json(r));
    return qkds::io::json_array(items);
  }
  if (format == OutputFormat::Csv) {
    std::vector<qkds::SweepRow> rows;
    for (const auto& r : reports) rows.push_back({r.attack, r.channel.mu(), r.channel.eta(), r, {}});
    return qkds::io::sweep_csv(rows);
  }
  std::string out;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i) out += "\n";
    out += qkds::io::report_text(reports[i]);
  }
  return out;
}

std::string render_simulations(const std::vector<qkds::io::SimulationComparison>& sims, OutputFormat format) {
  if (format == OutputFormat::Json) {
    if (sims.size() == 1) return qkds::io::simulation_json(sims.front()).dump() + "\n";
    std::vector<qkds::io::JsonObject> items;
    for (const auto& s : sims) items.push_back(qkds::io::simulation_json(s));
    return qkds::io::json_array(items);
  }
  std::string out;
  for (std::size_t i = 0; i < sims.size(); ++i) {
    if (i) out += "\n";
    out += qkds::io::simulation_text(sims[i]);
  }
  return out;
}

qkds::io::SimulationComparison simulate(const qkds::AttackSpec& attack, const qkds::PulseChannel& pc,
                                        std::uint64_t trials, std::uint64_t seed) {
  qkds::McConfig cfg;
  cfg.attack = attack;
  cfg.pc = pc;
  cfg.trials = trials;
  cfg.seed = seed;
  return {qkds::evaluate(attack, pc), qkds::estimate(cfg)};
}

std::string render_schedule(const qkds::AttackSpec& attack, const qkds::PulseChannel& pc, OutputFormat format) {
  using qkds::io::brief;
  using qkds::io::exact;
  const auto schedule = qkds::calibrate(attack, pc);
  qkds::io::JsonObject o;
  std::string text;
  auto field = [&](const std::string& key, double v) {
    o.number(key, v);
    text += fmt::format("{:<14}{}\n", key + ":", brief(v));
  };
  o.string("attack", std::string(qkds::to_string(attack.kind))).number("mu", pc.mu()).number("eta", pc.eta());
  text += fmt::format("{:<14}{}\n", "attack:", qkds::to_string(attack.kind));
  if (const auto* c = std::get_if<qkds::CouplingSchedule>(&schedule)) {
    field("gamma_sq", c->gamma_sq);
    field("block_prob", c->block_prob());
    const double eta_min = attack.kind == qkds::AttackKind::ACBS ? qkds::acbs_min_eta(pc.mu())
                                                                  : qkds::cbs_min_eta(pc.mu());
    field("eta_min", eta_min);
  } else if (const auto* fs = std::get_if<qkds::FiniteSchedule>(&schedule)) {
    o.integer("n", fs->n_max());
    text += fmt::format("{:<14}{}\n", "n:", fs->n_max());
    field("t", fs->t());
    field("t_pow_2n", std::pow(fs->t(), 2.0 * fs->n_max()));
    field("residual", qkds::cbsf_vacuum_prob(pc.mu(), *fs) - std::exp(-pc.mu() * pc.eta()));
  } else if (const auto* b = std::get_if<qkds::PnsBlocking>(&schedule)) {
    field("pass_single", b->pass_single);
    field("pass_double", b->pass_double);
    field("pass_multi", b->pass_multi);
  } else {
    text += "schedule:     none (attack has no tunable parameters)\n";
  }
  return format == OutputFormat::Json ? o.dump() + "\n" : text;
}

int run_plan(const qkds::io::RunPlan& plan) {
  std::string out;
  if (plan.trials) {
    std::vector<qkds::io::SimulationComparison> sims;
    for (const auto& a : plan.attacks) sims.push_back(simulate(a, plan.pc, *plan.trials, plan.seed));
    out = render_simulations(sims, plan.format == OutputFormat::Csv ? OutputFormat::Text : plan.format);
  } else {
    std::vector<qkds::AttackReport> reports;
    for (const auto& a : plan.attacks) reports.push_back(qkds::evaluate(a, plan.pc));
    out = render_reports(reports, plan.format);
  }
  emit(out, plan.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eavesdropping attacks on weak-coherent-pulse QKD: closed forms, Monte Carlo, sweeps"};
  app.require_subcommand(1);

  ScenarioArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate one attack at one (mu, eta)");
  add_scenario_flags(eval_cmd, eval_args);

  ScenarioArgs cal_args;
  auto* cal_cmd = app.add_subcommand("calibrate", "print the calibrated attack parameters");
  add_scenario_flags(cal_cmd, cal_args);

  ScenarioArgs sim_args;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo estimate next to the closed form");
  add_scenario_flags(sim_cmd, sim_args);
  sim_cmd->add_option("--trials", trials, "number of pulses to simulate")->required();
  sim_cmd->add_option("--seed", seed, "random seed")->required();

  std::string mu_grid, eta_grid, attacks_arg, n_arg, sweep_format = "csv", sweep_output;
  auto* sweep_cmd = app.add_subcommand("sweep", "evaluate attacks over a (mu, eta) grid");
  sweep_cmd->add_option("--mu,--mu-grid", mu_grid, "mu values: a,b,c or lo:hi:n[:log]")->required();
  sweep_cmd->add_option("--eta,--eta-grid", eta_grid, "eta values: a,b,c or lo:hi:n[:log]")->required();
  sweep_cmd->add_option("--attacks", attacks_arg, "comma-separated attack list")->required();
  sweep_cmd->add_option("--n", n_arg, "comma-separated beam splitter counts for cbsf");
  sweep_cmd->add_option("--format", sweep_format, "csv or json");
  sweep_cmd->add_option("--output", sweep_output, "output file (default stdout)");

  std::string reg_mu, reg_eta, reg_format = "csv", reg_output;
  auto* reg_cmd = app.add_subcommand("regions", "label the dominant no-storage attack over a grid");
  reg_cmd->add_option("--mu,--mu-grid", reg_mu, "mu values")->required();
  reg_cmd->add_option("--eta,--eta-grid", reg_eta, "eta values")->required();
  reg_cmd->add_option("--format", reg_format, "csv or json");
  reg_cmd->add_option("--output", reg_output, "output file (default stdout)");

  std::string scenario_path;
  auto* run_cmd = app.add_subcommand("run", "execute a scenario file");
  run_cmd->add_option("--scenario", scenario_path, "scenario JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*eval_cmd || *sim_cmd) {
      const bool sim = sim_cmd->parsed();
      const auto& a = sim ? sim_args : eval_args;
      const auto format = qkds::io::parse_output_format(a.format);
      if (format == OutputFormat::Csv && sim) throw qkds::InputError("simulate supports text or json");
      if (sim && trials == 0) throw qkds::InputError("--trials must be >= 1");
      const auto scenario = scenario_from(a, sim ? std::optional<std::uint64_t>(trials) : std::nullopt, seed);
      const auto plan = qkds::io::to_plan(scenario);
      // attack_from re-checks the cbsf / --n pairing with a clearer message.
      attack_from(a);
      if (!a.save_scenario.empty()) qkds::io::write_file_atomic(a.save_scenario, qkds::io::dump_scenario(scenario));
      return run_plan(plan);
    }
    if (*cal_cmd) {
      const auto attack = attack_from(cal_args);
      const qkds::PulseChannel pc(cal_args.mu, cal_args.eta);
      emit(render_schedule(attack, pc, qkds::io::parse_output_format(cal_args.format)), cal_args.output);
      return 0;
    }
    if (*sweep_cmd) {
      qkds::GridSpec gs;
      gs.mu_values = qkds::parse_grid(mu_grid);
      gs.eta_values = qkds::parse_grid(eta_grid);
      for (auto name : qkds::detail::split(attacks_arg, ',')) gs.attacks.push_back(qkds::parse_attack_kind(name));
      if (!n_arg.empty()) {
        for (double n : qkds::parse_grid(n_arg)) gs.cbsf_n_values.push_back(static_cast<int>(n));
      }
      const auto format = qkds::io::parse_output_format(sweep_format);
      if (format == OutputFormat::Text) throw qkds::InputError("sweep supports csv or json");
      const auto rows = qkds::sweep(gs);
      for (const auto& r : rows) {
        if (!r.error.empty()) {
          std::cerr << "cell " << qkds::to_string(r.attack.kind) << " mu=" << r.mu << " eta=" << r.eta << ": "
                    << r.error << "\n";
        }
        if (r.report && r.report->extrapolated) {
          std::cerr << "note: pns-ns rows use an extrapolated no-storage PNS model\n";
          break;
        }
      }
      emit(format == OutputFormat::Json ? qkds::io::sweep_json(rows) : qkds::io::sweep_csv(rows), sweep_output);
      return 0;
    }
    if (*reg_cmd) {
      qkds::GridSpec gs;
      gs.mu_values = qkds::parse_grid(reg_mu);
      gs.eta_values = qkds::parse_grid(reg_eta);
      const auto format = qkds::io::parse_output_format(reg_format);
      if (format == OutputFormat::Text) throw qkds::InputError("regions supports csv or json");
      const auto rows = qkds::classify_regions(gs);
      emit(format == OutputFormat::Json ? qkds::io::regions_json(rows) : qkds::io::regions_csv(rows), reg_output);
      return 0;
    }
    if (*run_cmd) {
      const auto scenario = qkds::io::parse_scenario(qkds::io::read_file(scenario_path));
      return run_plan(qkds::io::to_plan(scenario));
    }
  } catch (const qkds::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qkds::SolverError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const qkds::io::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
