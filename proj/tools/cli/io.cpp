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

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "cli/cli.hpp"
#include "json.hpp"
#include "sag/error.hpp"

namespace sag::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kAlertHeader = "cycle_id,timestamp_s,type_id";

template <typename T>
bool parse_int(std::string_view s, T& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

// NaN and infinities are not JSON numbers.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

void write_alerts(std::ostream& out, const std::vector<AlertCycle>& cycles) {
  out << kAlertHeader << '\n';
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    for (const auto& a : cycles[c]) out << c << ',' << a.timestamp_s << ',' << a.type_id << '\n';
  }
}

std::vector<AlertCycle> read_alerts(std::istream& in, std::size_t num_types) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("alert log is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kAlertHeader) throw DataError("alert log header must be '" + std::string(kAlertHeader) + "'");

  std::vector<AlertCycle> cycles;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos || line.find(',', c2 + 1) != std::string::npos) {
      throw DataError("row " + std::to_string(row) + ": expected three fields");
    }
    const std::string_view view(line);
    std::size_t cycle = 0, type = 0;
    std::int32_t ts = 0;
    if (!parse_int(view.substr(0, c1), cycle) || !parse_int(view.substr(c1 + 1, c2 - c1 - 1), ts) ||
        !parse_int(view.substr(c2 + 1), type)) {
      throw DataError("row " + std::to_string(row) + ": fields must be non-negative integers");
    }
    if (ts < 0 || ts >= kCycleSeconds) {
      throw DataError("row " + std::to_string(row) + ": timestamp outside [0, 86400)");
    }
    if (num_types != 0 && type >= num_types) {
      throw DataError("row " + std::to_string(row) + ": unknown type id " + std::to_string(type));
    }
    if (cycle >= cycles.size()) cycles.resize(cycle + 1);
    if (!cycles[cycle].empty() && cycles[cycle].back().timestamp_s > ts) {
      throw DataError("row " + std::to_string(row) + ": timestamps go backwards within cycle");
    }
    cycles[cycle].push_back({ts, type});
  }
  return cycles;
}

void write_trace_header(std::ostream& out) { out << kTraceHeader << '\n'; }

void write_trace(std::ostream& out, std::size_t cycle_id, const std::vector<DecisionRecord>& trace) {
  const auto old = out.precision(12);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& r = trace[i];
    out << cycle_id << ',' << i << ',' << r.alert.timestamp_s << ',' << r.alert.type_id << ','
        << r.best_type << ',' << to_string(r.signal) << ',' << r.ossp_utility << ','
        << r.online_sse_utility << ',' << r.offline_sse_utility << ',' << r.remaining_budget
        << '\n';
  }
  out.precision(old);
}

std::string profile_json(const RateProfile& profile) {
  json rows = json::array();
  for (AlertTypeId t = 0; t < profile.num_types(); ++t) {
    const auto m = profile.means(t);
    rows.push_back(std::vector<double>(m.begin(), m.end()));
  }
  return json{{"bucket_width", profile.bucket_width()}, {"remaining_mean", rows}}.dump(2) + "\n";
}

RateProfile parse_profile(const std::string& json_text) {
  try {
    const json j = json::parse(json_text);
    return RateProfile(j.at("bucket_width").get<std::int32_t>(),
                       j.at("remaining_mean").get<std::vector<std::vector<double>>>());
  } catch (const json::exception& e) {
    throw DataError(std::string("bad profile: ") + e.what());
  } catch (const Error& e) {
    throw DataError(std::string("bad profile: ") + e.what());
  }
}

namespace {

json summary_fields(const AdvantageSummary& s) {
  return {{"alerts", s.alerts},
          {"mean_advantage", number(s.mean_advantage)},
          {"stdev_advantage", number(s.stdev_advantage)},
          {"improvement_pct", number(s.improvement_pct)},
          {"mean_ossp_utility", number(s.mean_ossp)},
          {"mean_online_sse_utility", number(s.mean_online_sse)},
          {"mean_offline_sse_utility", number(s.mean_offline_sse)}};
}

json timing_fields(const Timing& t) {
  return {{"total_seconds", t.total_seconds},
          {"mean_alert_seconds", t.mean_alert_seconds},
          {"median_alert_seconds", t.median_alert_seconds},
          {"max_alert_seconds", t.max_alert_seconds}};
}

}  // namespace

std::string summary_json(const ExperimentReport& report, const RunInfo& info) {
  json days = json::array();
  for (std::size_t d = 0; d < report.days.size(); ++d) {
    json day = summary_fields(report.days[d].summary);
    day["cycle_id"] = info.first_test_cycle + d;
    day["runtime"] = timing_fields(report.days[d].timing);
    days.push_back(std::move(day));
  }
  json j = summary_fields(report.summary);
  j["settings"] = {{"budget", info.budget},
                   {"alpha", info.alpha},
                   {"quit_loss", info.quit_loss},
                   {"quit_prob_scale", info.quit_prob_scale},
                   {"seed", info.seed}};
  j["test_days"] = report.days.size();
  j["days"] = std::move(days);
  j["runtime"] = timing_fields(report.timing);
  return j.dump(2) + "\n";
}

std::string report_json(const PropertyReport& report) {
  auto counts = [](const std::vector<PropertyCount>& v) {
    json out = json::array();
    for (const auto& c : v) {
      out.push_back({{"property", c.property}, {"checked", c.checked}, {"violations", c.violations}});
    }
    return out;
  };
  json violations = json::array();
  for (const auto& v : report.violations) {
    json types = json::array();
    for (const auto& p : v.data.types) {
      types.push_back({{"u_dc", p.u_dc},
                       {"u_du", p.u_du},
                       {"u_ac", p.u_ac},
                       {"u_au", p.u_au},
                       {"audit_cost", p.audit_cost},
                       {"quit_prob", p.quit_prob},
                       {"quit_loss", p.quit_loss}});
    }
    violations.push_back({{"property", v.property},
                          {"instance", v.instance},
                          {"detail", v.detail},
                          {"types", types},
                          {"lambdas", v.data.lambdas},
                          {"budget", v.data.budget}});
  }
  return json{{"instances", report.instances},
              {"attack_regime_instances", report.attack_regime},
              {"ok", report.ok()},
              {"properties", counts(report.counts)},
              {"outside_attack_regime", counts(report.outside_regime)},
              {"violations", violations},
              {"seconds", report.seconds}}
             .dump(2) + "\n";
}

std::string solution_json(const EquilibriumSolution& s, const PayoffStructure& payoffs) {
  json types = json::array();
  for (AlertTypeId t = 0; t < payoffs.size(); ++t) {
    json row = {{"type_id", t},
                {"name", payoffs[t].name},
                {"coverage", s.coverage.at(t)},
                {"budget_split", s.budget_split.at(t)}};
    if (s.scheme) {
      const auto& e = (*s.scheme)[t];
      row["p1"] = e.p1;
      row["q1"] = e.q1;
      row["p0"] = e.p0;
      row["q0"] = e.q0;
    }
    types.push_back(std::move(row));
  }
  return json{{"best_type", s.best_type},
              {"auditor_utility", s.auditor_utility},
              {"attacker_utility", s.attacker_utility},
              {"types", types}}
      .dump(2);
}

}  // namespace sag::cli
