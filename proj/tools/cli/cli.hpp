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

// Configuration, file formats and subcommands of the `sag` tool.

#ifndef SAG_TOOLS_CLI_CLI_HPP_
#define SAG_TOOLS_CLI_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "sag/arrival.hpp"
#include "sag/datagen.hpp"
#include "sag/engine.hpp"
#include "sag/oracle.hpp"
#include "sag/types.hpp"

namespace sag::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,  // verify found violations, bench missed its target
  kExitConfig = 2,
  kExitData = 3,
  kExitSolver = 4,
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::vector<TypePayoff> payoffs;
  ArrivalSpec arrivals;
  double budget = 50.0;
  double alpha = 0.01;
  double rollback_threshold = 1.0;
  std::int32_t bucket_width = 3600;
  Interpolation interpolation = Interpolation::kPiecewiseConstant;
  double grid_step = 0.01;
  std::uint64_t seed = 42;
  std::size_t history_days = 41;
  std::size_t test_days = 15;
};

// Seven reference alert types with their payoffs and daily statistics.
Config default_config();

// Keys missing from the file keep their defaults; a "types" array replaces
// the whole type table. Throws ConfigError.
Config parse_config(const std::string& json_text);
Config load_config(const std::string& path);
std::string dump_config(const Config& config);

// Alert log: `cycle_id,timestamp_s,type_id`.
void write_alerts(std::ostream& out, const std::vector<AlertCycle>& cycles);
// Throws DataError on a bad header, malformed rows, out-of-range fields or
// timestamps that go backwards inside a cycle. `num_types` == 0 skips the
// type check.
std::vector<AlertCycle> read_alerts(std::istream& in, std::size_t num_types);

inline constexpr const char* kTraceHeader =
    "cycle_id,alert_idx,timestamp_s,type_id,best_type,signal,ossp_utility,"
    "online_sse_utility,offline_sse_utility,remaining_budget";
void write_trace_header(std::ostream& out);
void write_trace(std::ostream& out, std::size_t cycle_id, const std::vector<DecisionRecord>& trace);

std::string profile_json(const RateProfile& profile);
RateProfile parse_profile(const std::string& json_text);

struct RunInfo {
  double budget = 0.0;
  double alpha = 0.0;
  double quit_loss = 0.0;
  double quit_prob_scale = 1.0;
  std::uint64_t seed = 0;
  std::size_t first_test_cycle = 0;
};
std::string summary_json(const ExperimentReport& report, const RunInfo& info);
std::string report_json(const PropertyReport& report);
std::string solution_json(const EquilibriumSolution& solution, const PayoffStructure& payoffs);

// Entry point; returns the process exit code.
int run(int argc, char** argv);

}  // namespace sag::cli

#endif  // SAG_TOOLS_CLI_CLI_HPP_
