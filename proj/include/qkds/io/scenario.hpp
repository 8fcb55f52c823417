#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qkds/types.hpp"

namespace qkds::io {

enum class OutputFormat { Text, Json, Csv };

inline std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Text: return "text";
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
  }
  return "?";
}

inline OutputFormat parse_output_format(std::string_view s) {
  if (s == "text") return OutputFormat::Text;
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  throw InputError("unknown format '" + std::string(s) + "' (expected text, json or csv)");
}

/// One scenario (mu, eta) with the attacks to evaluate and, when trials is
/// set, a Monte Carlo cross-check for each of them. Stored as a flat JSON object.
struct ScenarioFile {
  double mu = 0.1;
  double eta = 0.1;
  std::vector<std::string> attacks;
  std::vector<int> n;
  std::optional<std::uint64_t> trials;
  std::uint64_t seed = 0;
  std::string output;
  OutputFormat format = OutputFormat::Text;

  friend bool operator==(const ScenarioFile&, const ScenarioFile&) = default;
};

/// Validated form of a scenario: what actually gets executed.
struct RunPlan {
  PulseChannel pc{0.1, 0.1};
  std::vector<AttackSpec> attacks;
  std::optional<std::uint64_t> trials;
  std::uint64_t seed = 0;
  std::string output;
  OutputFormat format = OutputFormat::Text;

  friend bool operator==(const RunPlan&, const RunPlan&) = default;
};

inline RunPlan to_plan(const ScenarioFile& s) {
  RunPlan p;
  p.pc = PulseChannel(s.mu, s.eta);
  if (s.attacks.empty()) throw InputError("scenario lists no attacks");
  for (const auto& name : s.attacks) {
    const auto kind = parse_attack_kind(name);
    if (kind == AttackKind::CBSF) {
      if (s.n.empty()) throw InputError("scenario with cbsf needs an n list");
      for (int n : s.n) p.attacks.emplace_back(kind, n);
    } else {
      p.attacks.emplace_back(kind);
    }
  }
  if (s.trials && *s.trials == 0) throw InputError("trials must be >= 1");
  p.trials = s.trials;
  p.seed = s.seed;
  p.output = s.output;
  p.format = s.format;
  return p;
}

inline nlohmann::json to_json(const ScenarioFile& s) {
  nlohmann::json j;
  j["mu"] = s.mu;
  j["eta"] = s.eta;
  j["attacks"] = s.attacks;
  if (!s.n.empty()) j["n"] = s.n;
  if (s.trials) j["trials"] = *s.trials;
  j["seed"] = s.seed;
  if (!s.output.empty()) j["output"] = s.output;
  j["format"] = std::string(to_string(s.format));
  return j;
}

inline ScenarioFile scenario_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("scenario must be a JSON object");
  static const char* kKnown[] = {"mu", "eta", "attacks", "attack", "n", "trials", "seed", "output", "format"};
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (const char* k : kKnown) known = known || key == k;
    if (!known) throw InputError("unknown scenario field '" + key + "'");
  }
  ScenarioFile s;
  try {
    s.mu = j.at("mu").get<double>();
    s.eta = j.at("eta").get<double>();
    if (j.contains("attacks")) {
      s.attacks = j.at("attacks").get<std::vector<std::string>>();
    } else if (j.contains("attack")) {
      s.attacks = {j.at("attack").get<std::string>()};
    }
    if (j.contains("n")) {
      s.n = j.at("n").is_array() ? j.at("n").get<std::vector<int>>() : std::vector<int>{j.at("n").get<int>()};
    }
    if (j.contains("trials")) s.trials = j.at("trials").get<std::uint64_t>();
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("output")) s.output = j.at("output").get<std::string>();
    if (j.contains("format")) s.format = parse_output_format(j.at("format").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed scenario: ") + e.what());
  }
  to_plan(s);  // same domain guards as the command line
  return s;
}

inline ScenarioFile parse_scenario(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("scenario is not valid JSON: ") + e.what());
  }
  return scenario_from_json(j);
}

inline std::string dump_scenario(const ScenarioFile& s) { return to_json(s).dump(2) + "\n"; }

}  // namespace qkds::io
