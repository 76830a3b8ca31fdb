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

#include <cmath>

#include "doctest.h"
#include "sag/datagen.hpp"
#include "sag/defaults.hpp"
#include "sag/engine.hpp"
#include "sag/error.hpp"
#include "support.hpp"

using namespace sag;
using doctest::Approx;

namespace {

// Two fixture types, each expecting `daily` alerts spread evenly over the day.
RateProfile even_profile(double daily) {
  std::vector<double> row(24);
  for (std::size_t b = 0; b < 24; ++b) row[b] = daily * static_cast<double>(24 - b) / 24.0;
  return RateProfile(3600, {row, row});
}

AlertCycle even_stream(std::size_t per_type) {
  AlertCycle out;
  for (std::size_t i = 0; i < 2 * per_type; ++i) {
    out.push_back({static_cast<std::int32_t>(i * (86400 / (2 * per_type))), i % 2});
  }
  return out;
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("start of cycle") {
  const auto a = start_cycle(50.0, 0.01, CounterRng(1));
  CHECK(a.remaining_budget == Approx(49.5));
  CHECK(a.reserved_budget == Approx(0.5));
  CHECK(start_cycle(50.0, 0.05, CounterRng(1)).remaining_budget == Approx(47.5));
  CHECK(start_cycle(0.0, 0.05, CounterRng(1)).remaining_budget == 0.0);
  CHECK_THROWS_AS(start_cycle(-1.0, 0.0, CounterRng(1)), Error);
  CHECK_THROWS_AS(start_cycle(1.0, 1.0, CounterRng(1)), Error);
}

TEST_CASE("deduction rules") {
  const SchemeEntry e{0.3, 0.2, 0.0, 0.5};
  CHECK(conditional_audit_probability(e, Signal::kWarn) == Approx(0.6));
  CHECK(deduct(10.0, conditional_audit_probability(e, Signal::kWarn), 1.0) == Approx(9.4));
  CHECK(conditional_audit_probability(e, Signal::kSilent) == 0.0);
  CHECK(deduct(10.0, conditional_audit_probability(e, Signal::kSilent), 1.0) == 10.0);

  const SchemeEntry quiet{0.0, 0.0, 0.3, 0.7};
  CHECK(conditional_audit_probability(quiet, Signal::kWarn) == 0.0);
  CHECK(conditional_audit_probability(quiet, Signal::kSilent) == Approx(0.3));
  CHECK(deduct(0.1, 0.5, 1.0) == 0.0);
}

TEST_CASE("alerts must arrive in order") {
  const auto pay = testing::two_type_payoffs();
  const auto profile = even_profile(20.0);
  CycleState s = start_cycle(5.0, 0.0, CounterRng(3));
  process_alert(s, {1000, 0}, pay, profile);
  try {
    process_alert(s, {999, 1}, pay, profile);
    FAIL("expected OutOfOrderAlert");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOutOfOrderAlert);
  }
  CHECK_THROWS_AS(process_alert(s, {2000, 5}, pay, profile), Error);
  CHECK_THROWS_AS(process_alert(s, {86400, 0}, pay, profile), Error);
  CHECK(s.alerts_processed == 1);
  CHECK(s.decisions.size() == 1);
}

TEST_CASE("empty stream") {
  const auto report = run_cycle({}, testing::two_type_payoffs(), even_profile(20.0), {},
                                CounterRng(1));
  CHECK(report.trace.empty());
  CHECK(report.summary.alerts == 0);
  CHECK(report.summary.mean_advantage == 0.0);
  CHECK(report.summary.stdev_advantage == 0.0);
}

TEST_CASE("single alert with a large budget") {
  EngineConfig cfg;
  cfg.total_budget = 100.0;
  const AlertCycle one{{3600, 1}};
  const auto report =
      run_cycle(one, testing::two_type_payoffs(), even_profile(20.0), cfg, CounterRng(1));
  REQUIRE(report.trace.size() == 1);
  CHECK(report.trace[0].ossp_utility >= report.trace[0].online_sse_utility - 1e-9);
}

TEST_CASE("budget stays monotone and within bounds") {
  const auto pay = testing::two_type_payoffs();
  const auto profile = even_profile(20.0);
  const auto stream = even_stream(20);
  for (double budget : {0.0, 1.0, 4.0, 30.0}) {
    EngineConfig cfg;
    cfg.total_budget = budget;
    cfg.alpha = 0.05;
    const auto report = run_cycle(stream, pay, profile, cfg, CounterRng(8));
    double prev = budget * 0.95, spent = 0.0;
    for (const auto& r : report.trace) {
      CHECK(r.remaining_budget <= prev);
      CHECK(r.remaining_budget >= 0.0);
      CHECK(r.deduction == Approx(prev - r.remaining_budget));
      spent += r.deduction;
      prev = r.remaining_budget;
    }
    CHECK(spent <= budget * 0.95 + 1e-6);
  }
}

TEST_CASE("replays are deterministic and the offline line is flat") {
  const auto pay = defaults::reference_payoffs();
  const auto cycles = generate_cycles(defaults::reference_arrivals(), 6, 17);
  const auto profile = fit(std::span(cycles).first(5), 7);
  const auto a = run_cycle(cycles[5], pay, profile, {}, CounterRng(4));
  const auto b = run_cycle(cycles[5], pay, profile, {}, CounterRng(4));
  REQUIRE(a.trace.size() == cycles[5].size());
  REQUIRE(a.trace.size() == b.trace.size());
  std::size_t warned = 0;
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].signal == b.trace[i].signal);
    CHECK(a.trace[i].ossp_utility == b.trace[i].ossp_utility);
    CHECK(a.trace[i].remaining_budget == b.trace[i].remaining_budget);
    CHECK(a.trace[i].offline_sse_utility == a.trace[0].offline_sse_utility);
    CHECK((a.trace[i].signal == Signal::kNone) ==
          (a.trace[i].alert.type_id != a.trace[i].best_type));
    warned += a.trace[i].signal == Signal::kWarn;
  }
  CHECK(warned > 0);
  const auto c = run_cycle(cycles[5], pay, profile, {}, CounterRng(5));
  bool differs = false;
  for (std::size_t i = 0; i < a.trace.size(); ++i) differs |= a.trace[i].signal != c.trace[i].signal;
  CHECK(differs);
}

TEST_CASE("mean deduction matches coverage") {
  const auto pay = testing::two_type_payoffs();
  const auto profile = even_profile(20.0);
  CycleState base = start_cycle(4.0, 0.0, CounterRng(0));
  CycleState probe = base;
  const AlertTypeId best = process_alert(probe, {43200, 0}, pay, profile).best_type;
  const AlertEvent alert{43200, best};
  probe = base;
  const auto first = process_alert(probe, alert, pay, profile);
  REQUIRE(first.signal != Signal::kNone);
  const double coverage = first.expected_deduction;
  REQUIRE(coverage > 0.0);

  constexpr int kReplays = 100000;
  const CounterRng root = CounterRng(11).derive("replay");
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < kReplays; ++i) {
    CycleState s = base;
    s.signal_rng = root.derive(static_cast<std::uint64_t>(i));
    const double d = process_alert(s, alert, pay, profile).deduction;
    sum += d;
    sum_sq += d * d;
  }
  const double mean = sum / kReplays;
  const double sd = std::sqrt(std::max(0.0, sum_sq / kReplays - mean * mean));
  CHECK(std::abs(mean - coverage) <= 3.0 * sd / std::sqrt(double(kReplays)));
}

TEST_CASE("silent-only schemes never warn") {
  const PayoffStructure pay({{"a", 2.0, -8.0, -10.0, 5.0, 1.0, 1.0, -1000.0},
                             {"b", 1.0, -5.0, -6.0, 4.0, 1.0, 1.0, -1000.0}});
  const auto report = run_cycle(even_stream(10), pay, even_profile(20.0), {}, CounterRng(2));
  for (const auto& r : report.trace) CHECK(r.signal != Signal::kWarn);
}

TEST_CASE("summary statistics") {
  std::vector<DecisionRecord> trace(3);
  trace[0].ossp_utility = 1.0;
  trace[1].ossp_utility = 2.0;
  trace[2].ossp_utility = 3.0;
  for (auto& r : trace) r.online_sse_utility = -4.0;
  const auto s = summarize(trace);
  CHECK(s.mean_advantage == Approx(6.0));
  CHECK(s.stdev_advantage == Approx(1.0));
  CHECK(s.improvement_pct == Approx(150.0));
}

TEST_CASE("sliding-window experiment") {
  const auto cycles = generate_cycles(defaults::reference_arrivals(), 8, 3);
  const auto report = run_experiment(cycles, 5, defaults::reference_payoffs(), {}, 3);
  REQUIRE(report.days.size() == 3);
  std::size_t alerts = 0;
  for (std::size_t d = 0; d < 3; ++d) {
    CHECK(report.days[d].trace.size() == cycles[5 + d].size());
    alerts += cycles[5 + d].size();
  }
  CHECK(report.summary.alerts == alerts);
  CHECK(report.summary.mean_advantage > 0.0);
  CHECK_THROWS_AS(run_experiment(cycles, 8, defaults::reference_payoffs(), {}, 3), Error);
}

}  // TEST_SUITE
