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

#include "sag/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "sag/equilibrium.hpp"
#include "sag/error.hpp"
#include "sag/rng.hpp"

namespace sag {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPosInf = std::numeric_limits<double>::infinity();

int divisions(double step) {
  if (!(step > 0.0) || step > 1.0) throw Error(ErrorCode::kInvalidArgument, "grid step must be in (0, 1]");
  const auto n = std::llround(1.0 / step);
  if (std::abs(static_cast<double>(n) * step - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "grid step must divide 1");
  }
  return static_cast<int>(n);
}

double payoff_scale(const PayoffStructure& payoffs) {
  double s = 1.0;
  for (const auto& p : payoffs.types()) {
    s = std::max({s, std::abs(p.u_dc), std::abs(p.u_du), std::abs(p.u_ac), std::abs(p.u_au)});
  }
  return s;
}

std::vector<bool> reachable_of(std::span<const double> kappas) {
  std::vector<bool> r(kappas.size());
  bool any = false;
  for (std::size_t t = 0; t < kappas.size(); ++t) any = (r[t] = kappas[t] > 0.0) || any;
  if (!any) std::fill(r.begin(), r.end(), true);
  return r;
}

double silent_utility(double p0, double q0, const TypePayoff& p) { return p0 * p.u_ac + q0 * p.u_au; }

// One grid choice for a type that is not the candidate best type.
struct Option {
  double cost = 0.0;  // budget used
  double s = 0.0;     // attacker silent-branch utility
  double g = 0.0;     // usability term
  int a = 0, b = 0, c = 0;  // coverage, p1, q1 in grid units
};

// Shortcut: non-best types never warn. Combinations of their coverages,
// sorted by cost with the running minimum of the largest silent utility.
struct CoverageTable {
  std::vector<double> cost;
  std::vector<double> min_s;
  std::vector<std::vector<int>> argmin;  // coverage units per listed type
};

CoverageTable coverage_table(const PayoffStructure& payoffs, std::span<const double> kappas,
                             const std::vector<AlertTypeId>& others, int n) {
  struct Combo {
    double cost, s;
    std::vector<int> a;
  };
  std::vector<Combo> combos{{0.0, kNegInf, {}}};
  for (AlertTypeId j : others) {
    std::vector<Combo> next;
    const int top = kappas[j] > 0.0 ? n : 0;
    for (const auto& base : combos) {
      for (int a = 0; a <= top; ++a) {
        const double theta = static_cast<double>(a) / n;
        Combo c = base;
        c.cost += top ? theta / kappas[j] : 0.0;
        c.s = std::max(c.s, silent_utility(theta, static_cast<double>(n - a) / n, payoffs[j]));
        c.a.push_back(a);
        next.push_back(std::move(c));
      }
    }
    combos = std::move(next);
  }
  std::stable_sort(combos.begin(), combos.end(),
                   [](const Combo& x, const Combo& y) { return x.cost < y.cost; });
  CoverageTable table;
  double best = kPosInf;
  std::vector<int> arg;
  for (auto& c : combos) {
    if (c.s < best) {
      best = c.s;
      arg = c.a;
    }
    table.cost.push_back(c.cost);
    table.min_s.push_back(best);
    table.argmin.push_back(arg);
  }
  return table;
}

// Exhaustive: one non-best type with its own warn variables, grouped by
// coverage level, each group sorted by silent utility with the running
// maximum of the usability term.
struct WarnGroup {
  double cost = 0.0;
  std::vector<Option> options;  // sorted by s
  std::vector<std::size_t> argmax_g;
};

std::vector<WarnGroup> warn_groups(const TypePayoff& p, double kappa, double w, int n, double tol) {
  std::vector<WarnGroup> groups;
  const int top = kappa > 0.0 ? n : 0;
  for (int a = 0; a <= top; ++a) {
    WarnGroup grp;
    grp.cost = top ? static_cast<double>(a) / n / kappa : 0.0;
    for (int b = 0; b <= a; ++b) {
      for (int c = 0; c <= n - a; ++c) {
        const double p1 = static_cast<double>(b) / n, q1 = static_cast<double>(c) / n;
        if (p1 * p.u_ac + q1 * p.u_au > tol) continue;
        Option o;
        o.cost = grp.cost;
        o.s = silent_utility(static_cast<double>(a - b) / n, static_cast<double>(n - a - c) / n, p);
        o.g = (p1 + q1) * w;
        o.a = a;
        o.b = b;
        o.c = c;
        grp.options.push_back(o);
      }
    }
    std::stable_sort(grp.options.begin(), grp.options.end(),
                     [](const Option& x, const Option& y) { return x.s < y.s; });
    std::size_t arg = 0;
    for (std::size_t i = 0; i < grp.options.size(); ++i) {
      if (grp.options[i].g > grp.options[arg].g) arg = i;
      grp.argmax_g.push_back(arg);
    }
    groups.push_back(std::move(grp));
  }
  return groups;
}

}  // namespace

GridResult grid_best_scheme(const PayoffStructure& payoffs, const FutureEstimate& estimate,
                            double budget, double grid_step, GridMode mode) {
  const std::size_t k = payoffs.size();
  if (k == 0 || estimate.size() != k) {
    throw Error(ErrorCode::kInvalidArgument, "estimate does not match the payoff table");
  }
  if (k > kMaxOracleTypes || (mode == GridMode::kExhaustive && k > 2)) {
    throw Error(ErrorCode::kTooManyTypes, "grid oracle supports at most 3 types (2 exhaustive)");
  }
  if (!(budget >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "budget must be >= 0");
  const int n = divisions(grid_step);
  const auto kappas = estimate.kappas();
  const auto weights = warn_cost_weights(payoffs, estimate.lambdas());
  const auto reachable = reachable_of(kappas);
  const double tol = 1e-9 * payoff_scale(payoffs);
  const double ctol = 1e-9 * std::max(1.0, budget);

  GridResult result;
  result.candidate_utilities.assign(k, kNegInf);
  double best_value = kNegInf;
  std::vector<SchemeEntry> best_entries;
  std::vector<double> best_split;

  for (AlertTypeId t = 0; t < k; ++t) {
    if (!reachable[t]) continue;
    const TypePayoff& pt = payoffs[t];
    std::vector<AlertTypeId> others;
    for (AlertTypeId j = 0; j < k; ++j) {
      if (j != t && reachable[j]) others.push_back(j);
    }
    CoverageTable table;
    std::vector<WarnGroup> groups;
    if (mode == GridMode::kShortcut) {
      table = coverage_table(payoffs, kappas, others, n);
    } else if (!others.empty()) {
      const AlertTypeId j = others.front();
      groups = warn_groups(payoffs[j], kappas[j], weights[j], n, tol);
    }

    double cand = kNegInf;
    std::vector<SchemeEntry> entries;
    std::vector<double> split;
    const int top = kappas[t] > 0.0 ? n : 0;
    for (int a = 0; a <= top; ++a) {
      const double theta = static_cast<double>(a) / n;
      const double own_cost = top ? theta / kappas[t] : 0.0;
      const double rest = budget - own_cost;
      if (rest < -ctol) break;

      // Shortcut: the cheapest way to push every other type's silent
      // utility down, given the leftover budget.
      double min_s = kPosInf;
      std::size_t row = 0;
      if (mode == GridMode::kShortcut) {
        const auto it = std::upper_bound(table.cost.begin(), table.cost.end(), rest + ctol);
        if (it == table.cost.begin()) continue;
        row = static_cast<std::size_t>(it - table.cost.begin()) - 1;
        min_s = table.min_s[row];
      }

      for (int b = 0; b <= a; ++b) {
        for (int c = 0; c <= n - a; ++c) {
          const double p1 = static_cast<double>(b) / n, q1 = static_cast<double>(c) / n;
          if (p1 * pt.u_ac + q1 * pt.u_au > tol) continue;
          const double p0 = static_cast<double>(a - b) / n;
          const double q0 = static_cast<double>(n - a - c) / n;
          const double s = silent_utility(p0, q0, pt);
          double value = p0 * pt.u_dc + q0 * pt.u_du + (p1 + q1) * weights[t];

          const Option* other = nullptr;
          if (mode == GridMode::kShortcut) {
            if (min_s > s + tol) continue;
          } else if (!groups.empty()) {
            double g = kNegInf;
            for (const auto& grp : groups) {
              if (grp.cost > rest + ctol) break;
              const auto it = std::upper_bound(
                  grp.options.begin(), grp.options.end(), s + tol,
                  [](double v, const Option& o) { return v < o.s; });
              if (it == grp.options.begin()) continue;
              const auto i = static_cast<std::size_t>(it - grp.options.begin()) - 1;
              const Option& o = grp.options[grp.argmax_g[i]];
              if (o.g > g) {
                g = o.g;
                other = &o;
              }
            }
            if (!other) continue;
            value += other->g;
          }
          if (!(value > cand)) continue;

          cand = value;
          entries.assign(k, SchemeEntry{});
          split.assign(k, 0.0);
          entries[t] = {p1, q1, p0, q0};
          split[t] = own_cost;
          if (mode == GridMode::kShortcut) {
            for (std::size_t i = 0; i < others.size(); ++i) {
              const AlertTypeId j = others[i];
              const int aj = table.argmin[row][i];
              const double th = static_cast<double>(aj) / n;
              entries[j] = {0.0, 0.0, th, static_cast<double>(n - aj) / n};
              split[j] = kappas[j] > 0.0 ? th / kappas[j] : 0.0;
            }
          } else if (other) {
            const AlertTypeId j = others.front();
            entries[j] = {static_cast<double>(other->b) / n, static_cast<double>(other->c) / n,
                          static_cast<double>(other->a - other->b) / n,
                          static_cast<double>(n - other->a - other->c) / n};
            split[j] = other->cost;
          }
        }
      }
    }
    result.candidate_utilities[t] = cand;
    if (cand > best_value + kCandidateTieTolerance) {
      best_value = cand;
      result.best_type = t;
      best_entries = std::move(entries);
      best_split = std::move(split);
    }
  }
  if (best_value == kNegInf) throw Error(ErrorCode::kNoFeasibleType, "no feasible grid point");
  result.utility = best_value;
  result.scheme = SignalingScheme(std::move(best_entries), std::move(best_split), budget);
  return result;
}

GridCoverageResult grid_online_sse(const PayoffStructure& payoffs, const FutureEstimate& estimate,
                                   double budget, std::size_t points) {
  const std::size_t k = payoffs.size();
  if (k == 0 || estimate.size() != k) {
    throw Error(ErrorCode::kInvalidArgument, "estimate does not match the payoff table");
  }
  if (k > kMaxOracleTypes) throw Error(ErrorCode::kTooManyTypes, "grid oracle supports at most 3 types");
  if (!(budget >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "budget must be >= 0");
  const auto kappas = estimate.kappas();
  const auto reachable = reachable_of(kappas);
  std::vector<AlertTypeId> funded;
  for (AlertTypeId t = 0; t < k; ++t) {
    if (kappas[t] > 0.0) funded.push_back(t);
  }

  // Units N such that the number of compositions of N into |funded| parts
  // exceeds `points`.
  auto compositions = [](std::size_t units, std::size_t parts) {
    double c = 1.0;
    for (std::size_t i = 1; i < parts; ++i) c = c * static_cast<double>(units + i) / static_cast<double>(i);
    return c;
  };
  std::size_t units = 1;
  if (funded.size() > 1) {
    while (compositions(units, funded.size()) <= static_cast<double>(points)) ++units;
  }
  const double tol = 1e-9 * payoff_scale(payoffs);

  GridCoverageResult result;
  result.candidate_utilities.assign(k, kNegInf);
  std::vector<std::vector<double>> best_cov(k);
  std::vector<double> theta(k, 0.0);

  auto evaluate = [&] {
    for (AlertTypeId t = 0; t < k; ++t) {
      if (!reachable[t]) continue;
      const double ut = attacker_coverage_utility(theta[t], payoffs[t]);
      bool ok = true;
      for (AlertTypeId j = 0; j < k && ok; ++j) {
        if (j != t && reachable[j]) ok = attacker_coverage_utility(theta[j], payoffs[j]) <= ut + tol;
      }
      if (!ok) continue;
      const double v = auditor_coverage_utility(theta[t], payoffs[t]);
      if (v > result.candidate_utilities[t]) {
        result.candidate_utilities[t] = v;
        best_cov[t] = theta;
      }
    }
  };

  // Walk all compositions of `units` over the funded types.
  std::vector<std::size_t> share(funded.size(), 0);
  auto recurse = [&](auto&& self, std::size_t i, std::size_t left) -> void {
    if (funded.empty()) {
      evaluate();
      return;
    }
    if (i + 1 == funded.size()) {
      share[i] = left;
      for (std::size_t m = 0; m < funded.size(); ++m) {
        const double b = budget * static_cast<double>(share[m]) / static_cast<double>(units);
        theta[funded[m]] = std::min(1.0, kappas[funded[m]] * b);
      }
      evaluate();
      return;
    }
    for (std::size_t s = 0; s <= left; ++s) {
      share[i] = s;
      self(self, i + 1, left - s);
    }
  };
  recurse(recurse, 0, units);

  double best = kNegInf;
  for (AlertTypeId t = 0; t < k; ++t) {
    if (result.candidate_utilities[t] > best + kCandidateTieTolerance) {
      best = result.candidate_utilities[t];
      result.best_type = t;
    }
  }
  if (best == kNegInf) throw Error(ErrorCode::kNoFeasibleType, "no feasible grid point");
  result.utility = best;
  result.coverage = best_cov[result.best_type];
  return result;
}

double objective_lipschitz(const PayoffStructure& payoffs, const FutureEstimate& estimate,
                           double budget) {
  const auto weights = warn_cost_weights(payoffs, estimate.lambdas());
  double l = 0.0;
  for (AlertTypeId t = 0; t < payoffs.size(); ++t) {
    const auto& p = payoffs[t];
    const double slope = std::abs(p.u_dc) + std::abs(p.u_du) + std::abs(weights[t]);
    l = std::max(l, slope * std::max(1.0, estimate.types[t].kappa * budget));
  }
  return l;
}

namespace {

std::string describe(const char* what, double got, double want) {
  std::ostringstream os;
  os.precision(12);
  os << what << ": got " << got << ", expected " << want;
  return os.str();
}

struct Tally {
  PropertyReport& report;
  const OracleInstance& data;
  std::size_t index;

  PropertyCount& slot(std::vector<PropertyCount>& v, const std::string& name) {
    for (auto& c : v) {
      if (c.property == name) return c;
    }
    v.push_back({name, 0, 0});
    return v.back();
  }

  void check(const std::string& name, bool ok, const std::string& detail) {
    auto& c = slot(report.counts, name);
    ++c.checked;
    if (ok) return;
    ++c.violations;
    report.violations.push_back({name, index, detail, data});
  }

  void outside(const std::string& name, bool ok) {
    auto& c = slot(report.outside_regime, name);
    ++c.checked;
    if (!ok) ++c.violations;
  }
};

}  // namespace

void check_instance(const OracleInstance& instance, std::size_t index, PropertyReport& report) {
  const PayoffStructure payoffs(instance.types);
  const FutureEstimate est = FutureEstimate::from_lambdas(instance.lambdas, payoffs);
  const auto weights = warn_cost_weights(payoffs, instance.lambdas);
  const auto reachable = reachable_of(est.kappas());
  const std::size_t k = payoffs.size();
  const double utol = kUtilityTolerance * payoff_scale(payoffs);
  constexpr double eps = kProbabilityTolerance;
  Tally tally{report, instance, index};
  ++report.instances;

  EquilibriumSolution ossp, sse;
  try {
    ossp = solve_ossp(payoffs, est, instance.budget);
    sse = solve_online_sse(payoffs, est, instance.budget);
  } catch (const Error& e) {
    tally.check("solvers_succeed", false, e.what());
    return;
  }
  const SignalingScheme& scheme = *ossp.scheme;
  const AlertTypeId best = ossp.best_type;

  bool quiet_off_best = true;
  for (AlertTypeId t = 0; t < k; ++t) {
    if (t != best) quiet_off_best = quiet_off_best && scheme[t].p1 <= eps && scheme[t].q1 <= eps;
  }
  tally.check("silent_off_best", quiet_off_best, "a non-best type carries warning mass");
  tally.check("signaling_never_worse", ossp.auditor_utility >= sse.auditor_utility - utol,
              describe("signaling utility", ossp.auditor_utility, sse.auditor_utility));
  if (payoffs[best].u_du > weights[best]) {
    bool silent = true;
    for (const auto& e : scheme.entries()) silent = silent && e.p1 <= eps && e.q1 <= eps;
    tally.check("no_warning_when_cheap",
                silent && std::abs(ossp.auditor_utility - sse.auditor_utility) <= utol,
                describe("signaling utility", ossp.auditor_utility, sse.auditor_utility));
  }

  double worst = 0.0;
  for (AlertTypeId t = 0; t < k; ++t) {
    worst = std::max(worst, std::abs(ossp.coverage[t] - sse.coverage[t]));
  }
  tally.check("equal_coverage", worst <= 1e-6, describe("max coverage gap", worst, 0.0));

  // Without a gain from attacking, spare budget may go to silent audits.
  const bool regime = sse.attacker_utility > utol;
  if (regime) ++report.attack_regime;
  try {
    if (no_silent_audit_condition(payoffs[best], weights[best])) {
      const bool ok = scheme[best].p0 <= eps;
      if (regime) {
        tally.check("no_silent_audit", ok, describe("p0 of best type", scheme[best].p0, 0.0));
      } else {
        tally.outside("no_silent_audit", ok);
      }
    }
  } catch (const Error&) {
    // degenerate ratio, condition undefined
  }

  tally.check("equal_attacker_utility",
              std::abs(ossp.attacker_utility - sse.attacker_utility) <= utol,
              describe("signaling attacker utility", ossp.attacker_utility, sse.attacker_utility));

  bool tight = true;
  const double s_best = attacker_expected_utility(scheme[best], payoffs[best]);
  for (AlertTypeId j = 0; j < k; ++j) {
    if (!reachable[j]) continue;
    if (sse.coverage[j] > eps) {
      tight = tight && std::abs(attacker_coverage_utility(sse.coverage[j], payoffs[j]) -
                                sse.attacker_utility) <= utol;
    }
    if (ossp.coverage[j] > eps) {
      tight = tight && std::abs(attacker_expected_utility(scheme[j], payoffs[j]) - s_best) <= utol;
    }
  }
  tally.check("tight_best_response", tight, "a covered type is strictly dominated");
}

PropertyReport verify_properties(std::size_t instance_count, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  const CounterRng root = CounterRng(seed).derive("oracle");
  PropertyReport report;
  for (std::size_t i = 0; i < instance_count; ++i) {
    CounterRng rng = root.derive(static_cast<std::uint64_t>(i));
    auto u = [&rng](double lo, double hi) {
      return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    OracleInstance inst;
    const int k = std::uniform_int_distribution<int>(1, 3)(rng);
    double saturation = 0.0;
    for (int t = 0; t < k; ++t) {
      TypePayoff p;
      p.name = "t" + std::to_string(t);
      p.u_dc = u(0.0, 10.0);
      p.u_du = -u(0.5, 10.0);
      p.u_ac = -u(0.5, 10.0);
      p.u_au = u(0.5, 10.0);
      p.audit_cost = u(0.5, 2.0);
      p.quit_prob = u(0.05, 1.0);
      p.quit_loss = -u(0.1, 5.0);
      const double lambda = u(0.2, 30.0);
      saturation += 1.0 / coverage_coefficient(lambda, p.audit_cost);
      inst.types.push_back(p);
      inst.lambdas.push_back(lambda);
    }
    inst.budget = u(0.0, 1.0) < 0.05 ? 0.0 : u(0.0, 1.2 * saturation);
    check_instance(inst, i, report);
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace sag
