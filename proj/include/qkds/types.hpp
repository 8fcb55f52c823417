#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qkds/error.hpp"

namespace qkds {

inline constexpr double kMaxMu = 10.0;

/// Alice's mean photon number and the channel's single-photon transmissivity.
class PulseChannel {
 public:
  PulseChannel(double mu, double eta) : mu_(mu), eta_(eta) {
    if (!(mu > 0.0 && mu <= kMaxMu)) {
      throw InputError("mu must lie in (0, 10], got " + std::to_string(mu));
    }
    if (!(eta > 0.0 && eta <= 1.0)) {
      throw InputError("eta must lie in (0, 1], got " + std::to_string(eta));
    }
  }

  double mu() const noexcept { return mu_; }
  double eta() const noexcept { return eta_; }

  friend bool operator==(const PulseChannel&, const PulseChannel&) = default;

 private:
  double mu_;
  double eta_;
};

inline void require_mu(double mu) {
  if (!(mu > 0.0 && mu <= kMaxMu)) {
    throw InputError("mu must lie in (0, 10], got " + std::to_string(mu));
  }
}

inline void require_gamma_sq(double gamma_sq) {
  if (!(gamma_sq >= 0.0 && gamma_sq <= 1.0)) {
    throw InputError("gamma_sq must lie in [0, 1], got " + std::to_string(gamma_sq));
  }
}

/// Survival factor gamma^2 = exp(-eps^2 tau) of an infinitesimal attack plus the
/// probability that Eve lets an outgoing signal pass.
///
/// The pass probability is stored rather than the block probability so that
/// tiny pass rates in the high-loss regime keep full relative precision.
struct CouplingSchedule {
  double gamma_sq = 1.0;
  double pass_prob = 1.0;

  double block_prob() const noexcept { return 1.0 - pass_prob; }
  bool blocking() const noexcept { return pass_prob < 1.0; }

  friend bool operator==(const CouplingSchedule&, const CouplingSchedule&) = default;
};

/// N finite beam splitters with amplitude transmittance t (reflectivity 1 - t^2).
class FiniteSchedule {
 public:
  FiniteSchedule(int n_max, double t) : n_max_(n_max), t_(t) {
    if (n_max < 1) throw InputError("n_max must be >= 1");
    if (!(t > 0.0 && t < 1.0)) throw InputError("t must lie in (0, 1), got " + std::to_string(t));
  }

  int n_max() const noexcept { return n_max_; }
  double t() const noexcept { return t_; }
  double reflectivity() const noexcept { return 1.0 - t_ * t_; }

  friend bool operator==(const FiniteSchedule&, const FiniteSchedule&) = default;

 private:
  int n_max_;
  double t_;
};

/// Pass probabilities of the photon-number-splitting blocking policy, per
/// photon-number class of the incoming signal: n = 1, n = 2, n >= 3.
struct PnsBlocking {
  double pass_single = 1.0;
  double pass_double = 1.0;
  double pass_multi = 1.0;

  double pass_for(int n) const noexcept {
    if (n <= 1) return pass_single;
    return n == 2 ? pass_double : pass_multi;
  }

  friend bool operator==(const PnsBlocking&, const PnsBlocking&) = default;
};

using Schedule = std::variant<std::monostate, CouplingSchedule, FiniteSchedule, PnsBlocking>;

enum class AttackKind { Channel, BS, DBS, PNS, PNSNoStorage, CBS, DCBS, ACBS, CBSF };

inline constexpr std::array<AttackKind, 9> kAllAttackKinds = {
    AttackKind::Channel, AttackKind::BS,   AttackKind::DBS,  AttackKind::PNS,  AttackKind::PNSNoStorage,
    AttackKind::CBS,     AttackKind::DCBS, AttackKind::ACBS, AttackKind::CBSF};

inline std::string_view to_string(AttackKind k) {
  switch (k) {
    case AttackKind::Channel: return "channel";
    case AttackKind::BS: return "bs";
    case AttackKind::DBS: return "dbs";
    case AttackKind::PNS: return "pns";
    case AttackKind::PNSNoStorage: return "pns-ns";
    case AttackKind::CBS: return "cbs";
    case AttackKind::DCBS: return "dcbs";
    case AttackKind::ACBS: return "acbs";
    case AttackKind::CBSF: return "cbsf";
  }
  return "?";
}

inline AttackKind parse_attack_kind(std::string_view name) {
  for (AttackKind k : kAllAttackKinds) {
    if (to_string(k) == name) return k;
  }
  if (name == "pns-nostorage" || name == "pnsns") return AttackKind::PNSNoStorage;
  throw InputError("unknown attack '" + std::string(name) +
                   "' (expected channel, bs, dbs, pns, pns-ns, cbs, dcbs, acbs, cbsf)");
}

/// Attacks Eve mounts after learning the basis (stored photons) versus those
/// where she must measure immediately.
inline bool needs_storage(AttackKind k) {
  return k == AttackKind::BS || k == AttackKind::PNS || k == AttackKind::CBS || k == AttackKind::CBSF;
}

/// An attack as chosen by the user; only CBSF carries extra data (the number
/// of beam splitters), its transmittance is calibrated later.
struct AttackSpec {
  AttackKind kind = AttackKind::Channel;
  int n_max = 0;

  AttackSpec() = default;
  AttackSpec(AttackKind k, int n = 0) : kind(k), n_max(k == AttackKind::CBSF ? n : 0) {
    if (k == AttackKind::CBSF && n < 1) throw InputError("cbsf requires n >= 1");
  }

  friend auto operator<=>(const AttackSpec&, const AttackSpec&) = default;
};

enum class Baseline { None, BS, DBS };

inline std::string_view to_string(Baseline b) {
  switch (b) {
    case Baseline::None: return "none";
    case Baseline::BS: return "bs";
    case Baseline::DBS: return "dbs";
  }
  return "?";
}

/// Storage attacks are compared with BS, no-storage attacks with DBS.
inline Baseline baseline_for(AttackKind k) {
  switch (k) {
    case AttackKind::Channel: return Baseline::None;
    case AttackKind::DBS:
    case AttackKind::DCBS:
    case AttackKind::ACBS:
    case AttackKind::PNSNoStorage: return Baseline::DBS;
    default: return Baseline::BS;
  }
}

/// Calibrated outcome of one attack at one (mu, eta) scenario.
struct AttackReport {
  AttackSpec attack;
  PulseChannel channel{0.1, 1.0};
  double p_b_nonvac = 0.0;
  double p_succ = 0.0;
  /// Absent for the bare channel, where there is no eavesdropper.
  std::optional<double> key_fraction;
  double p_dc = 0.0;
  Schedule schedule;
  Baseline baseline = Baseline::None;
  /// key_fraction / baseline key fraction; absent when undefined.
  std::optional<double> quotient;
  /// Set for models that are extrapolations rather than derived results.
  bool extrapolated = false;
};

/// Finite distribution over survival factors gamma^2.
class MixedStrategy {
 public:
  struct Component {
    double weight;
    double gamma_sq;
  };

  explicit MixedStrategy(std::vector<Component> components) : components_(std::move(components)) {
    if (components_.empty()) throw InputError("mixed strategy needs at least one component");
    double total = 0.0;
    for (const auto& c : components_) {
      if (!(c.weight >= 0.0)) throw InputError("mixed strategy weights must be >= 0");
      require_gamma_sq(c.gamma_sq);
      total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) throw InputError("mixed strategy weights must sum to 1");
  }

  const std::vector<Component>& components() const noexcept { return components_; }

  double mean_gamma_sq() const noexcept {
    double m = 0.0;
    for (const auto& c : components_) m += c.weight * c.gamma_sq;
    return m;
  }

 private:
  std::vector<Component> components_;
};

}  // namespace qkds
