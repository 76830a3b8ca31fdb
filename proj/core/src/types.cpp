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

#include "sag/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sag/error.hpp"

namespace sag {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidPayoffs: return "InvalidPayoffs";
    case ErrorCode::kInvalidScheme: return "InvalidScheme";
    case ErrorCode::kZeroMass: return "ZeroMass";
    case ErrorCode::kMalformedProgram: return "MalformedProgram";
    case ErrorCode::kCycleLimit: return "CycleLimit";
    case ErrorCode::kEmptyHistory: return "EmptyHistory";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNoFeasibleType: return "NoFeasibleType";
    case ErrorCode::kDegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::kOutOfOrderAlert: return "OutOfOrderAlert";
    case ErrorCode::kTooManyTypes: return "TooManyTypes";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
  }
  return "Unknown";
}

void validate(const TypePayoff& p) {
  auto fail = [&](const std::string& why) {
    std::ostringstream os;
    os << "type '" << p.name << "': " << why;
    throw Error(ErrorCode::kInvalidPayoffs, os.str());
  };
  const bool finite = std::isfinite(p.u_dc) && std::isfinite(p.u_du) &&
                      std::isfinite(p.u_ac) && std::isfinite(p.u_au) &&
                      std::isfinite(p.audit_cost) && std::isfinite(p.quit_prob) &&
                      std::isfinite(p.quit_loss);
  if (!finite) fail("non-finite payoff");
  if (!(p.u_ac < 0.0 && 0.0 < p.u_au)) fail("requires u_ac < 0 < u_au");
  if (!(p.u_dc >= 0.0 && 0.0 > p.u_du)) fail("requires u_dc >= 0 > u_du");
  if (!(p.audit_cost > 0.0)) fail("requires audit_cost > 0");
  if (!(p.quit_prob >= 0.0 && p.quit_prob <= 1.0)) fail("requires quit_prob in [0,1]");
  if (!(p.quit_loss <= 0.0)) fail("requires quit_loss <= 0");
}

PayoffStructure::PayoffStructure(std::vector<TypePayoff> types)
    : types_(std::move(types)) {
  if (types_.empty()) {
    throw Error(ErrorCode::kInvalidPayoffs, "at least one alert type is required");
  }
  for (const auto& t : types_) validate(t);
}

PayoffStructure PayoffStructure::with_quit_loss(double quit_loss) const {
  auto copy = types_;
  for (auto& t : copy) t.quit_loss = quit_loss;
  return PayoffStructure(std::move(copy));
}

PayoffStructure PayoffStructure::with_quit_prob_scale(double scale) const {
  if (!(scale >= 0.0)) {
    throw Error(ErrorCode::kInvalidPayoffs, "quit_prob scale must be non-negative");
  }
  auto copy = types_;
  for (auto& t : copy) t.quit_prob = std::clamp(t.quit_prob * scale, 0.0, 1.0);
  return PayoffStructure(std::move(copy));
}

SignalingScheme::SignalingScheme(std::vector<SchemeEntry> entries,
                                 std::vector<double> budget_split,
                                 double budget_cap)
    : entries_(std::move(entries)), budget_split_(std::move(budget_split)) {
  constexpr double eps = kProbabilityTolerance;
  if (budget_split_.size() != entries_.size()) {
    throw Error(ErrorCode::kInvalidScheme, "budget split and entries differ in length");
  }
  for (std::size_t t = 0; t < entries_.size(); ++t) {
    const auto& e = entries_[t];
    for (double v : {e.p1, e.q1, e.p0, e.q0}) {
      if (!(v >= -eps && v <= 1.0 + eps)) {
        throw Error(ErrorCode::kInvalidScheme,
                    "probability outside [0,1] for type " + std::to_string(t));
      }
    }
    if (std::abs(e.p1 + e.q1 + e.p0 + e.q0 - 1.0) > eps) {
      throw Error(ErrorCode::kInvalidScheme,
                  "probabilities do not sum to one for type " + std::to_string(t));
    }
  }
  double total = 0.0;
  for (double b : budget_split_) {
    if (!(b >= -eps)) throw Error(ErrorCode::kInvalidScheme, "negative budget split");
    total += b;
  }
  if (total > budget_cap + eps * std::max(1.0, budget_cap)) {
    throw Error(ErrorCode::kInvalidScheme, "budget split exceeds the remaining budget");
  }
}

double attacker_cond_utility(double p, double q, const PayoffStructure& payoffs,
                             AlertTypeId type) {
  const double mass = p + q;
  if (!(mass > 0.0)) {
    throw Error(ErrorCode::kZeroMass, "conditional utility of an empty branch");
  }
  const auto& pay = payoffs[type];
  return (p * pay.u_ac + q * pay.u_au) / mass;
}

double attacker_expected_utility(const SchemeEntry& e, const TypePayoff& pay) {
  return e.p0 * pay.u_ac + e.q0 * pay.u_au;
}

double attacker_coverage_utility(double theta, const TypePayoff& pay) {
  return theta * pay.u_ac + (1.0 - theta) * pay.u_au;
}

double auditor_coverage_utility(double theta, const TypePayoff& pay) {
  return theta * pay.u_dc + (1.0 - theta) * pay.u_du;
}

std::vector<double> warn_cost_weights(const PayoffStructure& payoffs,
                                      std::span<const double> expected_alerts) {
  if (expected_alerts.size() != payoffs.size()) {
    throw Error(ErrorCode::kInvalidArgument, "expected-alert vector has wrong length");
  }
  std::vector<double> w(payoffs.size());
  for (std::size_t t = 0; t < w.size(); ++t) {
    w[t] = payoffs[t].quit_prob * expected_alerts[t] * payoffs[t].quit_loss;
  }
  return w;
}

double auditor_expected_utility(const SignalingScheme& scheme,
                                const PayoffStructure& payoffs,
                                AlertTypeId best_type,
                                std::span<const double> weights) {
  if (scheme.size() != payoffs.size() || weights.size() != payoffs.size()) {
    throw Error(ErrorCode::kInvalidArgument, "scheme, payoffs and weights differ in length");
  }
  const auto& best = scheme[best_type];
  double value = best.p0 * payoffs[best_type].u_dc + best.q0 * payoffs[best_type].u_du;
  for (std::size_t t = 0; t < scheme.size(); ++t) {
    value += scheme[t].warn_mass() * weights[t];
  }
  return value;
}

}  // namespace sag
