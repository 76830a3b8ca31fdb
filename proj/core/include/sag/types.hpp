// Copyright 2026 The SAG Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Domain records shared by the solver, the arrival model and the replay
// engine.

#ifndef SAG_TYPES_HPP_
#define SAG_TYPES_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sag {

// Closure and constraint-tightness tolerance for probabilities.
inline constexpr double kProbabilityTolerance = 1e-9;

// One audit cycle is a day, timestamps are seconds since its start.
inline constexpr std::int32_t kCycleSeconds = 86400;

// Index into the alert-type table.
using AlertTypeId = std::size_t;

struct TypePayoff {
  std::string name;
  double u_dc = 0.0;  // auditor, attack audited
  double u_du = 0.0;  // auditor, attack missed
  double u_ac = 0.0;  // attacker, audited
  double u_au = 0.0;  // attacker, not audited
  double audit_cost = 1.0;
  double quit_prob = 0.0;  // chance a benign user walks away after a warning
  double quit_loss = 0.0;  // auditor loss per benign quit, <= 0
};

// Validated per-type payoff table. Construction enforces the sign
// conventions u_ac < 0 < u_au, u_dc >= 0 > u_du, audit_cost > 0,
// quit_prob in [0,1] and quit_loss <= 0.
class PayoffStructure {
 public:
  PayoffStructure() = default;
  explicit PayoffStructure(std::vector<TypePayoff> types);

  std::size_t size() const noexcept { return types_.size(); }
  const TypePayoff& operator[](AlertTypeId t) const { return types_.at(t); }
  std::span<const TypePayoff> types() const noexcept { return types_; }

  // Copy with every quit_loss replaced.
  PayoffStructure with_quit_loss(double quit_loss) const;
  // Copy with every quit_prob multiplied by `scale` (clamped to [0,1]).
  PayoffStructure with_quit_prob_scale(double scale) const;

 private:
  std::vector<TypePayoff> types_;
};

void validate(const TypePayoff& payoff);

// Joint distribution over {warn, silent} x {audit, no audit} for one type.
struct SchemeEntry {
  double p1 = 0.0;  // warn, audit
  double q1 = 0.0;  // warn, no audit
  double p0 = 0.0;  // silent, audit
  double q0 = 1.0;  // silent, no audit

  double coverage() const noexcept { return p1 + p0; }
  double warn_mass() const noexcept { return p1 + q1; }
  double silent_mass() const noexcept { return p0 + q0; }
};

class SignalingScheme {
 public:
  SignalingScheme() = default;
  // Throws kInvalidScheme when an entry leaves [0,1] or does not sum to one
  // within kProbabilityTolerance, when a split is negative, or when the
  // split total exceeds `budget_cap`.
  SignalingScheme(std::vector<SchemeEntry> entries,
                  std::vector<double> budget_split,
                  double budget_cap);

  std::size_t size() const noexcept { return entries_.size(); }
  const SchemeEntry& operator[](AlertTypeId t) const { return entries_.at(t); }
  std::span<const SchemeEntry> entries() const noexcept { return entries_; }
  std::span<const double> budget_split() const noexcept { return budget_split_; }

 private:
  std::vector<SchemeEntry> entries_;
  std::vector<double> budget_split_;
};

struct AlertEvent {
  std::int32_t timestamp_s = 0;
  AlertTypeId type_id = 0;

  friend bool operator==(const AlertEvent&, const AlertEvent&) = default;
};

// Alerts of one audit cycle in arrival order.
using AlertCycle = std::vector<AlertEvent>;

struct EquilibriumSolution {
  std::vector<double> coverage;
  AlertTypeId best_type = 0;
  double auditor_utility = 0.0;
  double attacker_utility = 0.0;
  std::vector<double> budget_split;
  std::optional<SignalingScheme> scheme;  // set for the signaling policy only
};

// Attacker utility conditional on the branch with audit mass p and
// no-audit mass q: (p*u_ac + q*u_au)/(p+q). Throws kZeroMass when p+q == 0.
double attacker_cond_utility(double p, double q, const PayoffStructure& payoffs,
                             AlertTypeId type);

// Attacker's expected utility for attacking `type` under `entry`; a warned
// attacker quits and scores 0, so only the silent branch counts.
double attacker_expected_utility(const SchemeEntry& entry, const TypePayoff& payoff);

// Attacker's expected utility against plain coverage theta.
double attacker_coverage_utility(double theta, const TypePayoff& payoff);

// Auditor utility against plain coverage theta.
double auditor_coverage_utility(double theta, const TypePayoff& payoff);

// Per-type usability weights P^t * E^t * C_t for the given expected numbers
// of future alerts.
std::vector<double> warn_cost_weights(const PayoffStructure& payoffs,
                                      std::span<const double> expected_alerts);

// p0[best]*u_dc + q0[best]*u_du + sum_t warn_mass[t]*weights[t].
double auditor_expected_utility(const SignalingScheme& scheme,
                                const PayoffStructure& payoffs,
                                AlertTypeId best_type,
                                std::span<const double> weights);

}  // namespace sag

#endif  // SAG_TYPES_HPP_
