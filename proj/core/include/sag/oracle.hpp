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

// Brute-force cross-checks for the equilibrium solvers and randomized checks
// of their structural properties. Everything here evaluates constraints
// directly and never calls the LP solver for the grid searches.

#ifndef SAG_ORACLE_HPP_
#define SAG_ORACLE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "sag/arrival.hpp"
#include "sag/types.hpp"

namespace sag {

// Largest type count the grid searches accept.
inline constexpr std::size_t kMaxOracleTypes = 3;

enum class GridMode {
  kShortcut,    // only the best type may warn
  kExhaustive,  // every type's warn variables on the grid (|T| <= 2)
};

struct GridResult {
  SignalingScheme scheme;
  AlertTypeId best_type = 0;
  double utility = 0.0;
  // Best utility per candidate best type, -inf when the candidate is
  // infeasible on the grid.
  std::vector<double> candidate_utilities;
};

// Grid search over per-type coverage, p1 and q1 (p0 and q0 follow) for the
// signaling program. Coverage steps are `grid_step`; the budget split of a
// type is its coverage over kappa. Throws kTooManyTypes above
// kMaxOracleTypes (above 2 in exhaustive mode) and kInvalidArgument for a
// step that does not divide 1.
GridResult grid_best_scheme(const PayoffStructure& payoffs, const FutureEstimate& estimate,
                            double budget, double grid_step,
                            GridMode mode = GridMode::kShortcut);

struct GridCoverageResult {
  std::vector<double> coverage;
  AlertTypeId best_type = 0;
  double utility = 0.0;
  std::vector<double> candidate_utilities;
};

// Exhaustive search over full-budget splits with about `points` grid points
// for the coverage program without signaling.
GridCoverageResult grid_online_sse(const PayoffStructure& payoffs, const FutureEstimate& estimate,
                                   double budget, std::size_t points = 10000);

// Lipschitz constant of the auditor objective in the grid coordinates:
// max_t (|u_dc| + |u_du| + |w_t|) * max(1, kappa_t * budget).
double objective_lipschitz(const PayoffStructure& payoffs, const FutureEstimate& estimate,
                           double budget);

struct OracleInstance {
  std::vector<TypePayoff> types;
  std::vector<double> lambdas;
  double budget = 0.0;
};

struct PropertyViolation {
  std::string property;
  std::size_t instance = 0;
  std::string detail;
  OracleInstance data;
};

struct PropertyCount {
  std::string property;
  std::size_t checked = 0;
  std::size_t violations = 0;
};

struct PropertyReport {
  std::size_t instances = 0;
  // Instances where the attacker still gains under the coverage baseline
  // (attacker utility > 0), the regime in which a rational attacker attacks
  // at all. no_silent_audit is only asserted there.
  std::size_t attack_regime = 0;
  std::vector<PropertyCount> counts;
  std::vector<PropertyViolation> violations;
  // no_silent_audit evaluated outside that regime; informational.
  std::vector<PropertyCount> outside_regime;
  double seconds = 0.0;

  bool ok() const noexcept { return violations.empty(); }
};

// Tolerances: utilities 1e-6 (relative to the payoff scale), probabilities
// kProbabilityTolerance.
inline constexpr double kUtilityTolerance = 1e-6;

// Random instances with 1 to 3 types, sign-valid payoffs, positive quit
// probability and loss, random lambdas and budgets. Checks silent_off_best,
// signaling_never_worse, equal_coverage, no_silent_audit,
// no_warning_when_cheap, equal_attacker_utility and tight_best_response.
PropertyReport verify_properties(std::size_t instance_count, std::uint64_t seed);

// The same checks on one instance; appends to `report`.
void check_instance(const OracleInstance& instance, std::size_t index, PropertyReport& report);

}  // namespace sag

#endif  // SAG_ORACLE_HPP_
