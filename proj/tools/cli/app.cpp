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

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "cli/cli.hpp"
#include "sag/equilibrium.hpp"
#include "sag/error.hpp"
#include "sag/rng.hpp"

namespace sag::cli {

namespace {

// Writes to a file, or to stdout for "" and "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw DataError("cannot open " + path + " for writing");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<AlertCycle> load_alerts(const std::string& path, std::size_t num_types) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return read_alerts(in, num_types);
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidPayoffs:
    case ErrorCode::kInvalidSpec:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kTooManyTypes:
      return kExitConfig;
    case ErrorCode::kEmptyHistory:
    case ErrorCode::kOutOfOrderAlert:
      return kExitData;
    default:
      return kExitSolver;
  }
}

struct Options {
  std::string config_path;
  std::string out;
  std::string alerts;
  std::string trace;
  std::string profile;
  std::size_t days = 0;
  std::uint64_t seed = 0;
  double budget = 0.0;
  double alpha = 0.0;
  double quit_loss = 0.0;
  double quit_prob_scale = 1.0;
  std::size_t history_days = 0;
  std::size_t test_days = 0;
  std::int32_t bucket_width = 0;
  std::vector<double> lambdas;
  double time_s = 0.0;
  bool grid = false;
  std::size_t instances = 1000;
  std::size_t repeats = 200;
};

Config config_for(const Options& o) {
  return o.config_path.empty() ? default_config() : load_config(o.config_path);
}

EstimateOptions estimate_options(const Config& c) {
  return {c.rollback_threshold, c.interpolation};
}

int cmd_generate(const Options& o, const CLI::App& sub) {
  Config c = config_for(o);
  const std::size_t days = sub.count("--days") ? o.days : c.history_days + c.test_days;
  const std::uint64_t seed = sub.count("--seed") ? o.seed : c.seed;
  Output out(o.out);
  write_alerts(out.stream(), generate_cycles(c.arrivals, days, seed));
  return kExitOk;
}

int cmd_fit(const Options& o, const CLI::App& sub) {
  Config c = config_for(o);
  const std::int32_t width = sub.count("--bucket-width") ? o.bucket_width : c.bucket_width;
  const auto cycles = load_alerts(o.alerts, c.payoffs.size());
  Output out(o.out);
  out.stream() << profile_json(fit(cycles, c.payoffs.size(), width));
  return kExitOk;
}

int cmd_simulate(const Options& o, const CLI::App& sub) {
  Config c = config_for(o);
  if (sub.count("--budget")) c.budget = o.budget;
  if (sub.count("--alpha")) c.alpha = o.alpha;
  if (sub.count("--seed")) c.seed = o.seed;
  if (sub.count("--history-days")) c.history_days = o.history_days;
  if (sub.count("--test-days")) c.test_days = o.test_days;
  PayoffStructure payoffs(c.payoffs);
  if (sub.count("--quit-loss")) payoffs = payoffs.with_quit_loss(o.quit_loss);
  payoffs = payoffs.with_quit_prob_scale(o.quit_prob_scale);

  std::vector<AlertCycle> cycles;
  if (o.alerts.empty()) {
    cycles = generate_cycles(c.arrivals, c.history_days + c.test_days, c.seed);
  } else {
    cycles = load_alerts(o.alerts, payoffs.size());
  }
  if (cycles.size() <= c.history_days) {
    throw DataError("alert log has " + std::to_string(cycles.size()) + " cycles, need more than " +
                    std::to_string(c.history_days));
  }
  const std::size_t total = std::min(cycles.size(), c.history_days + c.test_days);
  const std::size_t offset = cycles.size() - total;
  const std::span<const AlertCycle> window(cycles.data() + offset, total);

  EngineConfig engine;
  engine.total_budget = c.budget;
  engine.alpha = c.alpha;
  engine.estimate = estimate_options(c);
  const ExperimentReport report =
      run_experiment(window, c.history_days, payoffs, engine, c.seed, c.bucket_width);

  if (!o.trace.empty()) {
    Output trace(o.trace);
    write_trace_header(trace.stream());
    for (std::size_t d = 0; d < report.days.size(); ++d) {
      write_trace(trace.stream(), offset + c.history_days + d, report.days[d].trace);
    }
  }
  RunInfo info;
  info.budget = c.budget;
  info.alpha = c.alpha;
  info.quit_loss = sub.count("--quit-loss") ? o.quit_loss : c.payoffs.front().quit_loss;
  info.quit_prob_scale = o.quit_prob_scale;
  info.seed = c.seed;
  info.first_test_cycle = offset + c.history_days;
  Output out(o.out);
  out.stream() << summary_json(report, info);
  return kExitOk;
}

int cmd_solve(const Options& o, const CLI::App& sub) {
  Config c = config_for(o);
  const PayoffStructure payoffs(c.payoffs);
  const double budget = sub.count("--budget") ? o.budget : c.budget * (1.0 - c.alpha);

  FutureEstimate est;
  if (!o.profile.empty()) {
    const RateProfile profile = parse_profile(slurp(o.profile));
    if (profile.num_types() != payoffs.size()) throw DataError("profile and config differ in type count");
    est = estimate(profile, payoffs, o.time_s, nullptr, estimate_options(c));
  } else {
    std::vector<double> lambdas = o.lambdas;
    if (lambdas.empty()) {
      for (const auto& a : c.arrivals.types) lambdas.push_back(a.daily_mean);
    }
    if (lambdas.size() != payoffs.size()) throw ConfigError("--lambdas needs one value per type");
    est = FutureEstimate::from_lambdas(lambdas, payoffs);
  }
  const auto ossp = solve_ossp(payoffs, est, budget);
  const auto sse = solve_online_sse(payoffs, est, budget);
  Output out(o.out);
  auto& s = out.stream();
  s << "{\n\"budget\": " << budget << ",\n\"ossp\": " << solution_json(ossp, payoffs)
    << ",\n\"online_sse\": " << solution_json(sse, payoffs);
  if (o.grid) {
    const auto g = grid_best_scheme(payoffs, est, budget, c.grid_step);
    s << ",\n\"grid\": {\"best_type\": " << g.best_type << ", \"auditor_utility\": " << g.utility
      << ", \"grid_step\": " << c.grid_step << "}";
  }
  s << "\n}\n";
  return kExitOk;
}

int cmd_verify(const Options& o, const CLI::App& sub) {
  Config c = config_for(o);
  const std::uint64_t seed = sub.count("--seed") ? o.seed : c.seed;
  const PropertyReport report = verify_properties(o.instances, seed);
  Output out(o.out);
  out.stream() << report_json(report);
  std::cerr << "verify: " << report.instances << " instances, " << report.violations.size()
            << " violations, " << report.seconds << " s\n";
  return report.ok() ? kExitOk : kExitCheckFailed;
}

int cmd_bench(const Options& o, const CLI::App& sub) {
  Config c = config_for(o);
  const std::uint64_t seed = sub.count("--seed") ? o.seed : c.seed;
  const double budget = sub.count("--budget") ? o.budget : c.budget * (1.0 - c.alpha);
  const PayoffStructure payoffs(c.payoffs);
  const RateProfile profile =
      fit(generate_cycles(c.arrivals, c.history_days, seed), payoffs.size(), c.bucket_width);

  CounterRng rng = CounterRng(seed).derive("bench");
  std::uniform_int_distribution<std::int32_t> when(0, kCycleSeconds - 1);
  std::vector<double> ms;
  ms.reserve(o.repeats);
  for (std::size_t i = 0; i < o.repeats; ++i) {
    const FutureEstimate est = estimate(profile, payoffs, when(rng), nullptr, estimate_options(c));
    const auto t0 = std::chrono::steady_clock::now();
    const auto sol = solve_ossp(payoffs, est, budget);
    ms.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    (void)sol;
  }
  std::sort(ms.begin(), ms.end());
  const double median = ms.empty() ? 0.0 : ms[ms.size() / 2];
  constexpr double kTargetMs = 100.0;
  const bool pass = median <= kTargetMs;
  Output out(o.out);
  out.stream() << "{\"types\": " << payoffs.size() << ", \"repeats\": " << ms.size()
               << ", \"median_ms\": " << median
               << ", \"max_ms\": " << (ms.empty() ? 0.0 : ms.back())
               << ", \"target_ms\": " << kTargetMs << ", \"pass\": " << (pass ? "true" : "false")
               << "}\n";
  return pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Signaling audit game solver and replay simulator", "sag"};
  app.require_subcommand(1);
  Options o;
  app.add_option("-c,--config", o.config_path, "JSON config (defaults to the reference setup)")
      ->check(CLI::ExistingFile);

  auto* gen = app.add_subcommand("generate", "write a synthetic alert log");
  gen->add_option("--days", o.days, "number of cycles");
  gen->add_option("--seed", o.seed);
  gen->add_option("-o,--out", o.out, "alert CSV path (stdout by default)");

  auto* fitc = app.add_subcommand("fit", "fit the remaining-alert profile of an alert log");
  fitc->add_option("--alerts", o.alerts, "alert CSV")->required();
  fitc->add_option("--bucket-width", o.bucket_width, "seconds per bucket");
  fitc->add_option("-o,--out", o.out, "profile JSON path (stdout by default)");

  auto* sim = app.add_subcommand("simulate", "replay test cycles and compare policies");
  sim->add_option("--alerts", o.alerts, "alert CSV (generated from the config when absent)");
  sim->add_option("--budget", o.budget, "total budget per cycle");
  sim->add_option("--alpha", o.alpha, "reserved budget fraction");
  sim->add_option("--quit-loss", o.quit_loss, "loss per benign user who quits");
  sim->add_option("--quit-prob-scale", o.quit_prob_scale, "multiplier on every quit probability");
  sim->add_option("--seed", o.seed);
  sim->add_option("--history-days", o.history_days);
  sim->add_option("--test-days", o.test_days);
  sim->add_option("--trace", o.trace, "per-alert trace CSV path");
  sim->add_option("-o,--out", o.out, "summary JSON path (stdout by default)");

  auto* solve = app.add_subcommand("solve", "solve one state and print both schemes");
  solve->add_option("--budget", o.budget, "remaining budget");
  solve->add_option("--lambdas", o.lambdas, "expected remaining alerts per type")->delimiter(',');
  solve->add_option("--profile", o.profile, "profile JSON from `fit`");
  solve->add_option("--time", o.time_s, "seconds since cycle start, with --profile");
  solve->add_flag("--grid", o.grid, "cross-check with the grid oracle (at most 3 types)");
  solve->add_option("-o,--out", o.out);

  auto* verify = app.add_subcommand("verify", "randomized equilibrium property checks");
  verify->add_option("--instances", o.instances);
  verify->add_option("--seed", o.seed);
  verify->add_option("-o,--out", o.out, "report JSON path (stdout by default)");

  auto* bench = app.add_subcommand("bench", "per-alert solve latency");
  bench->add_option("--repeats", o.repeats);
  bench->add_option("--budget", o.budget);
  bench->add_option("--seed", o.seed);
  bench->add_option("-o,--out", o.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*gen) return cmd_generate(o, *gen);
    if (*fitc) return cmd_fit(o, *fitc);
    if (*sim) return cmd_simulate(o, *sim);
    if (*solve) return cmd_solve(o, *solve);
    if (*verify) return cmd_verify(o, *verify);
    if (*bench) return cmd_bench(o, *bench);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitConfig;
}

}  // namespace sag::cli
