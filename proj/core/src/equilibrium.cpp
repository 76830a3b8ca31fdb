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

#include "sag/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sag/error.hpp"
#include "sag/lp.hpp"

namespace sag {
namespace {

// Which types the attacker can target, and which get a dominance row.
std::vector<bool> reachable_types(std::span<const double> kappas) {
  std::vector<bool> reachable(kappas.size());
  bool any = false;
  for (std::size_t t = 0; t < kappas.size(); ++t) {
    reachable[t] = kappas[t] > 0.0;
    any = any || reachable[t];
  }
  if (!any) std::fill(reachable.begin(), reachable.end(), true);
  return reachable;
}

void scale_row(std::vector<double>& row, double& rhs) {
  double m = 0.0;
  for (double v : row) m = std::max(m, std::abs(v));
  if (m <= 0.0) return;
  for (double& v : row) v /= m;
  rhs /= m;
}

void check_inputs(const PayoffStructure& payoffs, std::size_t n, double budget) {
  if (n != payoffs.size()) {
    throw Error(ErrorCode::kInvalidArgument, "estimate and payoff table differ in types");
  }
  if (!(budget >= 0.0) || !std::isfinite(budget)) {
    throw Error(ErrorCode::kInvalidArgument, "budget must be finite and >= 0");
  }
}

[[noreturn]] void unbounded(const char* which) {
  throw Error(ErrorCode::kNoFeasibleType,
              std::string(which) + " program reported Unbounded; bounds are inconsistent");
}

// ---------------------------------------------------------------------------
// Coverage game without signaling (online and offline SSE).

std::optional<EquilibriumSolution> coverage_candidate(const PayoffStructure& payoffs,
                                                      std::span<const double> kappas,
                                                      const std::vector<bool>& reachable,
                                                      double budget, AlertTypeId t) {
  const std::size_t n = payoffs.size();
  lp::LinearProgram prog(n);
  const auto& pt = payoffs[t];
  prog.objective[t] = kappas[t] * (pt.u_dc - pt.u_du);
  for (std::size_t j = 0; j < n; ++j) {
    double hi = budget;
    if (kappas[j] > 0.0) {
      hi = std::min(hi, 1.0 / kappas[j]);
    } else {
      hi = 0.0;
    }
    prog.bounds[j] = {0.0, hi};
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (j == t || !reachable[j]) continue;
    const auto& pj = payoffs[j];
    std::vector<double> row(n, 0.0);
    row[t] -= kappas[t] * (pt.u_ac - pt.u_au);
    row[j] += kappas[j] * (pj.u_ac - pj.u_au);
    double rhs = pt.u_au - pj.u_au;
    scale_row(row, rhs);
    prog.add_le(std::move(row), rhs);
  }
  prog.add_le(std::vector<double>(n, 1.0), budget);

  const auto out = lp::solve(prog);
  if (out.status == lp::LpStatus::kInfeasible) return std::nullopt;
  if (out.status == lp::LpStatus::kUnbounded) unbounded("coverage");

  EquilibriumSolution sol;
  sol.best_type = t;
  sol.budget_split = out.solution;
  sol.coverage.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    sol.coverage[j] = std::clamp(kappas[j] * out.solution[j], 0.0, 1.0);
  }
  sol.auditor_utility = auditor_coverage_utility(sol.coverage[t], pt);
  sol.attacker_utility = attacker_coverage_utility(sol.coverage[t], pt);
  return sol;
}

EquilibriumSolution best_coverage(const PayoffStructure& payoffs,
                                  std::span<const double> kappas,
                                  const std::vector<bool>& reachable, double budget) {
  std::optional<EquilibriumSolution> best;
  for (std::size_t t = 0; t < payoffs.size(); ++t) {
    if (!reachable[t]) continue;
    auto cand = coverage_candidate(payoffs, kappas, reachable, budget, t);
    if (!cand) continue;
    if (!best || cand->auditor_utility > best->auditor_utility + kCandidateTieTolerance) {
      best = std::move(cand);
    }
  }
  if (!best) throw Error(ErrorCode::kNoFeasibleType, "no candidate type is feasible");
  return *best;
}

// ---------------------------------------------------------------------------
// Signaling game. Variables per type j: p1, q1, p0, q0, B at 5j .. 5j+4.

constexpr std::size_t kP1 = 0;
constexpr std::size_t kQ1 = 1;
constexpr std::size_t kP0 = 2;
constexpr std::size_t kQ0 = 3;
constexpr std::size_t kB = 4;
constexpr std::size_t kStride = 5;

std::optional<EquilibriumSolution> signaling_candidate(const PayoffStructure& payoffs,
                                                       const FutureEstimate& est,
                                                       const std::vector<bool>& reachable,
                                                       std::span<const double> weights,
                                                       double budget, AlertTypeId t) {
  const std::size_t n = payoffs.size();
  const std::size_t vars = kStride * n;
  auto at = [](std::size_t j, std::size_t k) { return kStride * j + k; };

  lp::LinearProgram prog(vars);
  const auto& pt = payoffs[t];
  prog.objective[at(t, kP0)] = pt.u_dc;
  prog.objective[at(t, kQ0)] = pt.u_du;
  for (std::size_t j = 0; j < n; ++j) {
    prog.objective[at(j, kP1)] += weights[j];
    prog.objective[at(j, kQ1)] += weights[j];
    if (!(est.types[j].kappa > 0.0)) prog.bounds[at(j, kB)] = {0.0, 0.0};
  }

  // The silent branch of the candidate must be the attacker's best option.
  for (std::size_t j = 0; j < n; ++j) {
    if (j == t || !reachable[j]) continue;
    std::vector<double> row(vars, 0.0);
    row[at(j, kP0)] = payoffs[j].u_ac;
    row[at(j, kQ0)] = payoffs[j].u_au;
    row[at(t, kP0)] -= pt.u_ac;
    row[at(t, kQ0)] -= pt.u_au;
    double rhs = 0.0;
    scale_row(row, rhs);
    prog.add_le(std::move(row), rhs);
  }
  // A warned attacker prefers to quit.
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> row(vars, 0.0);
    row[at(j, kP1)] = payoffs[j].u_ac;
    row[at(j, kQ1)] = payoffs[j].u_au;
    double rhs = 0.0;
    scale_row(row, rhs);
    prog.add_le(std::move(row), rhs);
  }
  {
    std::vector<double> row(vars, 0.0);
    for (std::size_t j = 0; j < n; ++j) row[at(j, kB)] = 1.0;
    prog.add_le(std::move(row), budget);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> coupling(vars, 0.0);
    coupling[at(j, kP1)] = 1.0;
    coupling[at(j, kP0)] = 1.0;
    coupling[at(j, kB)] = -est.types[j].kappa;
    prog.add_eq(std::move(coupling), 0.0);

    std::vector<double> closure(vars, 0.0);
    for (std::size_t k : {kP1, kQ1, kP0, kQ0}) closure[at(j, k)] = 1.0;
    prog.add_eq(std::move(closure), 1.0);
  }

  const auto out = lp::solve(prog);
  if (out.status == lp::LpStatus::kInfeasible) return std::nullopt;
  if (out.status == lp::LpStatus::kUnbounded) unbounded("signaling");

  std::vector<SchemeEntry> entries(n);
  std::vector<double> split(n);
  for (std::size_t j = 0; j < n; ++j) {
    auto prob = [&](std::size_t k) { return std::clamp(out.solution[at(j, k)], 0.0, 1.0); };
    entries[j] = {prob(kP1), prob(kQ1), prob(kP0), prob(kQ0)};
    split[j] = std::max(0.0, out.solution[at(j, kB)]);
  }

  EquilibriumSolution sol;
  sol.best_type = t;
  sol.coverage.resize(n);
  for (std::size_t j = 0; j < n; ++j) sol.coverage[j] = std::min(1.0, entries[j].coverage());
  sol.budget_split = split;
  sol.scheme = SignalingScheme(entries, std::move(split), budget);
  sol.auditor_utility = auditor_expected_utility(*sol.scheme, payoffs, t, weights);
  sol.attacker_utility = attacker_expected_utility(entries[t], pt);
  return sol;
}

}  // namespace

std::optional<EquilibriumSolution> solve_online_sse_for(const PayoffStructure& payoffs,
                                                        const FutureEstimate& estimate,
                                                        double budget, AlertTypeId candidate) {
  check_inputs(payoffs, estimate.size(), budget);
  const auto kappas = estimate.kappas();
  const auto reachable = reachable_types(kappas);
  if (candidate >= payoffs.size() || !reachable[candidate]) return std::nullopt;
  return coverage_candidate(payoffs, kappas, reachable, budget, candidate);
}

EquilibriumSolution solve_online_sse(const PayoffStructure& payoffs,
                                     const FutureEstimate& estimate, double budget) {
  check_inputs(payoffs, estimate.size(), budget);
  const auto kappas = estimate.kappas();
  return best_coverage(payoffs, kappas, reachable_types(kappas), budget);
}

std::optional<EquilibriumSolution> solve_ossp_for(const PayoffStructure& payoffs,
                                                  const FutureEstimate& estimate,
                                                  double budget, AlertTypeId candidate) {
  check_inputs(payoffs, estimate.size(), budget);
  const auto reachable = reachable_types(estimate.kappas());
  if (candidate >= payoffs.size() || !reachable[candidate]) return std::nullopt;
  const auto weights = warn_cost_weights(payoffs, estimate.lambdas());
  return signaling_candidate(payoffs, estimate, reachable, weights, budget, candidate);
}

EquilibriumSolution solve_ossp(const PayoffStructure& payoffs,
                               const FutureEstimate& estimate, double budget) {
  check_inputs(payoffs, estimate.size(), budget);
  const auto reachable = reachable_types(estimate.kappas());
  const auto weights = warn_cost_weights(payoffs, estimate.lambdas());
  std::optional<EquilibriumSolution> best;
  for (std::size_t t = 0; t < payoffs.size(); ++t) {
    if (!reachable[t]) continue;
    auto cand = signaling_candidate(payoffs, estimate, reachable, weights, budget, t);
    if (!cand) continue;
    if (!best || cand->auditor_utility > best->auditor_utility + kCandidateTieTolerance) {
      best = std::move(cand);
    }
  }
  if (!best) throw Error(ErrorCode::kNoFeasibleType, "no candidate type is feasible");
  return *best;
}

EquilibriumSolution solve_offline_sse(const PayoffStructure& payoffs,
                                      std::span<const std::int64_t> realized_counts,
                                      double budget) {
  check_inputs(payoffs, realized_counts.size(), budget);
  std::vector<double> kappas(payoffs.size(), 0.0);
  for (std::size_t t = 0; t < payoffs.size(); ++t) {
    if (realized_counts[t] < 0) {
      throw Error(ErrorCode::kInvalidArgument, "realized counts must be non-negative");
    }
    if (realized_counts[t] > 0) {
      kappas[t] = 1.0 / (payoffs[t].audit_cost * static_cast<double>(realized_counts[t]));
    }
  }
  return best_coverage(payoffs, kappas, reachable_types(kappas), budget);
}

bool no_silent_audit_condition(const TypePayoff& p, double warn_cost) {
  const double den = p.u_du - warn_cost;
  if (den == 0.0 || p.u_au == 0.0) {
    throw Error(ErrorCode::kDegenerateDenominator, "u_du - warn_cost or u_au is zero");
  }
  const double ratio = (p.u_dc - warn_cost) / den;
  return 0.0 >= ratio && ratio >= p.u_ac / p.u_au;
}

}  // namespace sag
