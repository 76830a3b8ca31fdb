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

// Multiple-LP equilibrium solvers: for every candidate best-response type the
// auditor's program is solved under the constraint that the candidate is the
// attacker's best response, and the best candidate wins.
//
// Types that cannot occur (lambda == 0, or a zero realized count) are neither
// attacker candidates nor dominance rows. When no type can occur at all,
// every type is treated as a zero-coverage candidate.

#ifndef SAG_EQUILIBRIUM_HPP_
#define SAG_EQUILIBRIUM_HPP_

#include <cstdint>
#include <optional>
#include <span>

#include "sag/arrival.hpp"
#include "sag/types.hpp"

namespace sag {

// Candidate objectives within this distance tie; the lowest type id wins.
inline constexpr double kCandidateTieTolerance = 1e-9;

// Online Stackelberg equilibrium without signaling. Coverage of type t is
// budget_split[t] * kappa[t], capped at 1.
EquilibriumSolution solve_online_sse(const PayoffStructure& payoffs,
                                     const FutureEstimate& estimate, double budget);

// Online Stackelberg signaling policy: joint warn/audit distribution per type
// plus the budget split. The objective charges every warning
// quit_prob * lambda * quit_loss.
EquilibriumSolution solve_ossp(const PayoffStructure& payoffs,
                               const FutureEstimate& estimate, double budget);

// Stackelberg equilibrium over the realized full-cycle counts: coverage of t
// is min(1, budget_split[t] / (audit_cost[t] * count[t])).
EquilibriumSolution solve_offline_sse(const PayoffStructure& payoffs,
                                      std::span<const std::int64_t> realized_counts,
                                      double budget);

// Single-candidate programs; nullopt when `candidate` cannot be made the
// attacker's best response.
std::optional<EquilibriumSolution> solve_online_sse_for(const PayoffStructure& payoffs,
                                                        const FutureEstimate& estimate,
                                                        double budget, AlertTypeId candidate);
std::optional<EquilibriumSolution> solve_ossp_for(const PayoffStructure& payoffs,
                                                  const FutureEstimate& estimate,
                                                  double budget, AlertTypeId candidate);

// 0 >= (u_dc - w)/(u_du - w) >= u_ac/u_au for the warning cost w of the best
// type. When it holds, the signaling policy never audits silently on that
// type (p0 == 0). Throws kDegenerateDenominator if u_du == w or u_au == 0.
bool no_silent_audit_condition(const TypePayoff& payoff, double warn_cost);

}  // namespace sag

#endif  // SAG_EQUILIBRIUM_HPP_
