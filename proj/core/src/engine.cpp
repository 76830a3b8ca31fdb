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

#include "sag/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "sag/error.hpp"

namespace sag {

const char* to_string(Signal s) noexcept {
  switch (s) {
    case Signal::kWarn: return "warn";
    case Signal::kSilent: return "silent";
    case Signal::kNone: break;
  }
  return "none";
}

CycleState start_cycle(double total_budget, double alpha, CounterRng signal_rng) {
  if (!(total_budget >= 0.0) || !std::isfinite(total_budget)) {
    throw Error(ErrorCode::kInvalidArgument, "total budget must be finite and >= 0");
  }
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must lie in [0, 1)");
  }
  CycleState state;
  state.remaining_budget = total_budget * (1.0 - alpha);
  state.reserved_budget = total_budget * alpha;
  state.signal_rng = signal_rng;
  return state;
}

double conditional_audit_probability(const SchemeEntry& entry, Signal signal) noexcept {
  double p = 0.0, q = 0.0;
  if (signal == Signal::kWarn) {
    p = entry.p1;
    q = entry.q1;
  } else {
    p = entry.p0;
    q = entry.q0;
  }
  const double mass = p + q;
  return mass > 0.0 ? std::clamp(p / mass, 0.0, 1.0) : 0.0;
}

double deduct(double budget, double audit_probability, double audit_cost) noexcept {
  return std::max(0.0, budget - audit_probability * audit_cost);
}

DecisionRecord process_alert(CycleState& state, const AlertEvent& alert,
                             const PayoffStructure& payoffs, const RateProfile& profile,
                             const EstimateOptions& options) {
  if (alert.type_id >= payoffs.size()) {
    throw Error(ErrorCode::kInvalidArgument, "alert type out of range");
  }
  if (alert.timestamp_s < 0 || alert.timestamp_s >= kCycleSeconds) {
    throw Error(ErrorCode::kInvalidArgument, "alert timestamp outside the cycle");
  }
  if (alert.timestamp_s < state.clock) {
    throw Error(ErrorCode::kOutOfOrderAlert, "alert precedes the cycle clock");
  }

  FutureEstimate est =
      estimate(profile, payoffs, alert.timestamp_s,
               state.last_estimate ? &*state.last_estimate : nullptr, options);

  const EquilibriumSolution ossp = solve_ossp(payoffs, est, state.remaining_budget);
  const EquilibriumSolution matched =
      solve_online_sse(payoffs, est, state.remaining_budget + state.reserved_budget);

  DecisionRecord rec;
  rec.alert = alert;
  rec.best_type = ossp.best_type;
  rec.ossp_utility = ossp.auditor_utility;
  rec.ossp_attacker_utility = ossp.attacker_utility;
  rec.online_sse_utility = matched.auditor_utility;
  rec.online_sse_attacker_utility = matched.attacker_utility;
  rec.offline_sse_utility = state.offline_utility.value_or(std::nan(""));
  rec.rollback_active = std::any_of(est.types.begin(), est.types.end(),
                                    [](const TypeEstimate& e) { return e.rollback_active; });

  const double cost = payoffs[alert.type_id].audit_cost;
  if (alert.type_id == ossp.best_type) {
    const SchemeEntry& entry = (*ossp.scheme)[alert.type_id];
    const double u = state.signal_rng.uniform01();
    rec.signal = u < entry.warn_mass() ? Signal::kWarn : Signal::kSilent;
    rec.audit_probability = conditional_audit_probability(entry, rec.signal);
    rec.expected_deduction = entry.coverage() * cost;
  } else {
    // Outside the best type the game is played without signaling.
    const EquilibriumSolution sse = solve_online_sse(payoffs, est, state.remaining_budget);
    rec.audit_probability = sse.coverage[alert.type_id];
    rec.expected_deduction = rec.audit_probability * cost;
  }

  const double before = state.remaining_budget;
  state.remaining_budget = deduct(before, rec.audit_probability, cost);
  rec.deduction = before - state.remaining_budget;
  rec.remaining_budget = state.remaining_budget;

  state.clock = alert.timestamp_s;
  state.last_estimate = std::move(est);
  ++state.alerts_processed;
  state.decisions.push_back(rec);
  return rec;
}

AdvantageSummary summarize(std::span<const DecisionRecord> trace) {
  AdvantageSummary s;
  s.alerts = trace.size();
  if (trace.empty()) return s;
  const double n = static_cast<double>(trace.size());
  for (const auto& r : trace) {
    s.mean_advantage += r.ossp_utility - r.online_sse_utility;
    s.mean_ossp += r.ossp_utility;
    s.mean_online_sse += r.online_sse_utility;
    s.mean_offline_sse += r.offline_sse_utility;
  }
  s.mean_advantage /= n;
  s.mean_ossp /= n;
  s.mean_online_sse /= n;
  s.mean_offline_sse /= n;
  if (trace.size() > 1) {
    double ss = 0.0;
    for (const auto& r : trace) {
      const double d = r.ossp_utility - r.online_sse_utility - s.mean_advantage;
      ss += d * d;
    }
    s.stdev_advantage = std::sqrt(ss / (n - 1.0));
  }
  if (s.mean_online_sse != 0.0) {
    s.improvement_pct = s.mean_advantage / std::abs(s.mean_online_sse) * 100.0;
  }
  return s;
}

namespace {

using Clock = std::chrono::steady_clock;

Timing timing_of(std::vector<double> samples, double total) {
  Timing t;
  t.total_seconds = total;
  if (samples.empty()) return t;
  t.mean_alert_seconds =
      std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
  t.max_alert_seconds = *std::max_element(samples.begin(), samples.end());
  const auto mid = samples.begin() + static_cast<std::ptrdiff_t>(samples.size() / 2);
  std::nth_element(samples.begin(), mid, samples.end());
  t.median_alert_seconds = *mid;
  return t;
}

CycleReport replay(std::span<const AlertEvent> stream, const PayoffStructure& payoffs,
                   const RateProfile& profile, const EngineConfig& config,
                   CounterRng signal_rng, std::vector<double>& samples) {
  const auto start = Clock::now();
  CycleState state = start_cycle(config.total_budget, config.alpha, signal_rng);

  std::vector<std::int64_t> counts(payoffs.size(), 0);
  for (const auto& a : stream) {
    if (a.type_id >= payoffs.size()) {
      throw Error(ErrorCode::kInvalidArgument, "alert type out of range");
    }
    ++counts[a.type_id];
  }
  if (!stream.empty()) {
    state.offline_utility =
        solve_offline_sse(payoffs, counts, config.total_budget).auditor_utility;
  }

  CycleReport report;
  state.decisions.reserve(stream.size());
  const std::size_t first = samples.size();
  for (const auto& a : stream) {
    const auto t0 = Clock::now();
    process_alert(state, a, payoffs, profile, config.estimate);
    samples.push_back(std::chrono::duration<double>(Clock::now() - t0).count());
  }
  report.trace = std::move(state.decisions);
  report.summary = summarize(report.trace);
  report.timing =
      timing_of({samples.begin() + static_cast<std::ptrdiff_t>(first), samples.end()},
                std::chrono::duration<double>(Clock::now() - start).count());
  return report;
}

}  // namespace

CycleReport run_cycle(std::span<const AlertEvent> stream, const PayoffStructure& payoffs,
                      const RateProfile& profile, const EngineConfig& config,
                      CounterRng signal_rng) {
  std::vector<double> samples;
  return replay(stream, payoffs, profile, config, signal_rng, samples);
}

ExperimentReport run_experiment(std::span<const AlertCycle> cycles, std::size_t history_days,
                                const PayoffStructure& payoffs, const EngineConfig& config,
                                std::uint64_t seed, std::int32_t bucket_width) {
  if (history_days == 0 || cycles.size() <= history_days) {
    throw Error(ErrorCode::kEmptyHistory, "need at least one history and one test cycle");
  }
  const auto start = Clock::now();
  const CounterRng signal_root = CounterRng(seed).derive("signal");
  ExperimentReport report;
  std::vector<double> samples;
  std::vector<DecisionRecord> pooled;
  for (std::size_t day = history_days; day < cycles.size(); ++day) {
    const RateProfile profile =
        fit(cycles.subspan(day - history_days, history_days), payoffs.size(), bucket_width);
    report.days.push_back(replay(cycles[day], payoffs, profile, config,
                                 signal_root.derive(static_cast<std::uint64_t>(day)), samples));
    const auto& trace = report.days.back().trace;
    pooled.insert(pooled.end(), trace.begin(), trace.end());
  }
  report.summary = summarize(pooled);
  report.timing =
      timing_of(std::move(samples), std::chrono::duration<double>(Clock::now() - start).count());
  return report;
}

}  // namespace sag
