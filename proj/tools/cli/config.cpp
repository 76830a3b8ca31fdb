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

#include <fstream>
#include <sstream>

#include "cli/cli.hpp"
#include "json.hpp"
#include "sag/defaults.hpp"
#include "sag/error.hpp"

namespace sag::cli {

using json = nlohmann::ordered_json;

Config default_config() {
  Config c;
  const PayoffStructure pay = defaults::reference_payoffs();
  c.payoffs.assign(pay.types().begin(), pay.types().end());
  c.arrivals = defaults::reference_arrivals();
  c.budget = defaults::kBudget;
  c.alpha = defaults::kAlpha;
  c.history_days = defaults::kHistoryDays;
  c.test_days = defaults::kTestDays;
  return c;
}

namespace {

template <typename T>
void read_key(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

void validate(const Config& c) {
  try {
    PayoffStructure check(c.payoffs);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (c.payoffs.empty()) throw ConfigError("at least one alert type is required");
  if (c.arrivals.types.size() != c.payoffs.size()) {
    throw ConfigError("arrival statistics and payoff table differ in length");
  }
  if (!(c.budget >= 0.0)) throw ConfigError("budget must be >= 0");
  if (!(c.alpha >= 0.0 && c.alpha < 1.0)) throw ConfigError("alpha must lie in [0, 1)");
  if (!(c.rollback_threshold >= 0.0)) throw ConfigError("rollback_threshold must be >= 0");
  if (c.bucket_width <= 0 || kCycleSeconds % c.bucket_width != 0) {
    throw ConfigError("bucket_width must divide 86400");
  }
  if (!(c.grid_step > 0.0 && c.grid_step <= 1.0)) throw ConfigError("grid_step must be in (0, 1]");
  if (c.history_days == 0 || c.test_days == 0) {
    throw ConfigError("history_days and test_days must be positive");
  }
  for (const auto& t : c.arrivals.types) {
    if (!(t.daily_mean >= 0.0) || !(t.daily_stdev >= 0.0)) {
      throw ConfigError("daily_mean and daily_stdev must be >= 0");
    }
  }
  double mass = 0.0;
  for (double w : c.arrivals.hourly_shape) {
    if (!(w >= 0.0)) throw ConfigError("hourly_shape weights must be >= 0");
    mass += w;
  }
  if (!(mass > 0.0)) throw ConfigError("hourly_shape has no positive weight");
}

}  // namespace

Config parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  Config c = default_config();
  if (j.contains("types")) {
    const json& types = j.at("types");
    if (!types.is_array()) throw ConfigError("'types' must be an array");
    c.payoffs.clear();
    c.arrivals.types.clear();
    for (const json& t : types) {
      if (!t.is_object()) throw ConfigError("each type must be an object");
      TypePayoff p;
      p.name = "type" + std::to_string(c.payoffs.size() + 1);
      read_key(t, "name", p.name);
      for (const char* key : {"u_dc", "u_du", "u_ac", "u_au"}) {
        if (!t.contains(key)) throw ConfigError(std::string("type is missing '") + key + "'");
      }
      read_key(t, "u_dc", p.u_dc);
      read_key(t, "u_du", p.u_du);
      read_key(t, "u_ac", p.u_ac);
      read_key(t, "u_au", p.u_au);
      read_key(t, "audit_cost", p.audit_cost);
      p.quit_prob = defaults::kQuitProb;
      p.quit_loss = defaults::kQuitLoss;
      read_key(t, "quit_prob", p.quit_prob);
      read_key(t, "quit_loss", p.quit_loss);
      TypeArrival a;
      read_key(t, "daily_mean", a.daily_mean);
      read_key(t, "daily_stdev", a.daily_stdev);
      c.payoffs.push_back(p);
      c.arrivals.types.push_back(a);
    }
  }
  if (j.contains("hourly_shape")) {
    std::vector<double> shape;
    read_key(j, "hourly_shape", shape);
    if (shape.size() != 24) throw ConfigError("hourly_shape needs 24 weights");
    std::copy(shape.begin(), shape.end(), c.arrivals.hourly_shape.begin());
  }
  read_key(j, "budget", c.budget);
  read_key(j, "alpha", c.alpha);
  read_key(j, "rollback_threshold", c.rollback_threshold);
  read_key(j, "bucket_width", c.bucket_width);
  read_key(j, "grid_step", c.grid_step);
  read_key(j, "seed", c.seed);
  read_key(j, "history_days", c.history_days);
  read_key(j, "test_days", c.test_days);
  if (j.contains("interpolation")) {
    std::string mode;
    read_key(j, "interpolation", mode);
    if (mode == "piecewise_constant") {
      c.interpolation = Interpolation::kPiecewiseConstant;
    } else if (mode == "linear") {
      c.interpolation = Interpolation::kLinear;
    } else {
      throw ConfigError("interpolation must be 'piecewise_constant' or 'linear'");
    }
  }
  validate(c);
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string dump_config(const Config& c) {
  json types = json::array();
  for (std::size_t t = 0; t < c.payoffs.size(); ++t) {
    const auto& p = c.payoffs[t];
    const auto& a = c.arrivals.types.at(t);
    types.push_back({{"name", p.name},
                     {"u_dc", p.u_dc},
                     {"u_du", p.u_du},
                     {"u_ac", p.u_ac},
                     {"u_au", p.u_au},
                     {"audit_cost", p.audit_cost},
                     {"quit_prob", p.quit_prob},
                     {"quit_loss", p.quit_loss},
                     {"daily_mean", a.daily_mean},
                     {"daily_stdev", a.daily_stdev}});
  }
  json j = {{"types", types},
            {"hourly_shape", c.arrivals.hourly_shape},
            {"budget", c.budget},
            {"alpha", c.alpha},
            {"rollback_threshold", c.rollback_threshold},
            {"bucket_width", c.bucket_width},
            {"interpolation", c.interpolation == Interpolation::kLinear ? "linear"
                                                                          : "piecewise_constant"},
            {"grid_step", c.grid_step},
            {"seed", c.seed},
            {"history_days", c.history_days},
            {"test_days", c.test_days}};
  return j.dump(2) + "\n";
}

}  // namespace sag::cli
