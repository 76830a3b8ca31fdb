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

// Online per-alert pipeline: estimate, solve, sample a signal, spend budget.

#ifndef SAG_ENGINE_HPP_
#define SAG_ENGINE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sag/arrival.hpp"
#include "sag/equilibrium.hpp"
#include "sag/rng.hpp"
#include "sag/types.hpp"

namespace sag {

enum class Signal { kNone, kWarn, kSilent };

const char* to_string(Signal s) noexcept;

struct EngineConfig {
  double total_budget = 50.0;
  double alpha = 0.01;  // fraction of the budget held back from the game
  EstimateOptions estimate{};
};

struct DecisionRecord {
  AlertEvent alert;
  AlertTypeId best_type = 0;
  Signal signal = Signal::kNone;
  double audit_probability = 0.0;   // conditional on the signal, or theta
  double expected_deduction = 0.0;  // coverage * audit cost of this alert
  double deduction = 0.0;           // budget actually taken
  double ossp_utility = 0.0;
  double online_sse_utility = 0.0;  // baseline gets remaining + reserved
  double offline_sse_utility = 0.0;
  double ossp_attacker_utility = 0.0;
  double online_sse_attacker_utility = 0.0;
  double remaining_budget = 0.0;    // after this alert
  bool rollback_active = false;
};

struct CycleState {
  double remaining_budget = 0.0;
  double reserved_budget = 0.0;
  std::int32_t clock = 0;
  std::size_t alerts_processed = 0;
  std::optional<FutureEstimate> last_estimate;
  std::optional<double> offline_utility;  // flat baseline for the cycle
  CounterRng signal_rng{0};
  std::vector<DecisionRecord> decisions;  // append-only
};

// remaining = B * (1 - alpha), reserved = B * alpha. The reserved part is
// never spent inside the cycle. Throws kInvalidArgument for B < 0 or alpha
// outside [0, 1).
CycleState start_cycle(double total_budget, double alpha, CounterRng signal_rng);

// p1/(p1+q1) on a warning and p0/(p0+q0) when silent; a branch without
// mass audits nothing.
double conditional_audit_probability(const SchemeEntry& entry, Signal signal) noexcept;

// Budget left after auditing with probability `audit_probability` at
// `audit_cost`, clamped at zero.
double deduct(double budget, double audit_probability, double audit_cost) noexcept;

// Advances `state` by one alert and returns what was decided.
// Throws kOutOfOrderAlert when the alert precedes the state clock and
// kInvalidArgument for unknown types or timestamps outside the cycle.
DecisionRecord process_alert(CycleState& state, const AlertEvent& alert,
                             const PayoffStructure& payoffs, const RateProfile& profile,
                             const EstimateOptions& options = {});

struct AdvantageSummary {
  std::size_t alerts = 0;
  double mean_advantage = 0.0;  // OSSP minus budget-matched online SSE
  double stdev_advantage = 0.0;
  double mean_ossp = 0.0;
  double mean_online_sse = 0.0;
  double mean_offline_sse = 0.0;
  // mean_advantage / |mean_online_sse| in percent; 0 when undefined
  double improvement_pct = 0.0;
};

AdvantageSummary summarize(std::span<const DecisionRecord> trace);

struct Timing {
  double total_seconds = 0.0;
  double mean_alert_seconds = 0.0;
  double median_alert_seconds = 0.0;
  double max_alert_seconds = 0.0;
};

struct CycleReport {
  std::vector<DecisionRecord> trace;
  AdvantageSummary summary;
  Timing timing;
};

// Replays one cycle. The offline baseline is solved once from the realized
// counts of `stream` at the full budget and repeated on every record.
CycleReport run_cycle(std::span<const AlertEvent> stream, const PayoffStructure& payoffs,
                      const RateProfile& profile, const EngineConfig& config,
                      CounterRng signal_rng);

struct ExperimentReport {
  std::vector<CycleReport> days;
  AdvantageSummary summary;  // pooled over all alerts of all test days
  Timing timing;
};

// Sliding window: test day i is replayed with a profile fit on the
// `history_days` cycles before it. Signal draws come from
// CounterRng(seed).derive("signal").derive(i).
ExperimentReport run_experiment(std::span<const AlertCycle> cycles, std::size_t history_days,
                                const PayoffStructure& payoffs, const EngineConfig& config,
                                std::uint64_t seed, std::int32_t bucket_width = 3600);

}  // namespace sag

#endif  // SAG_ENGINE_HPP_
