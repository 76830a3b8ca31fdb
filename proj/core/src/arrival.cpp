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

#include "sag/arrival.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sag/error.hpp"

namespace sag {

RateProfile::RateProfile(std::int32_t bucket_width,
                         std::vector<std::vector<double>> remaining_mean)
    : bucket_width_(bucket_width), means_(std::move(remaining_mean)) {
  if (bucket_width_ <= 0 || kCycleSeconds % bucket_width_ != 0) {
    throw Error(ErrorCode::kInvalidArgument, "bucket width must divide 86400");
  }
  const std::size_t buckets = static_cast<std::size_t>(kCycleSeconds / bucket_width_);
  for (auto& row : means_) {
    if (row.size() != buckets) {
      throw Error(ErrorCode::kInvalidArgument,
                  "profile row has " + std::to_string(row.size()) + " buckets, expected " +
                      std::to_string(buckets));
    }
    for (double v : row) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw Error(ErrorCode::kInvalidArgument, "profile means must be finite and >= 0");
      }
    }
    row = isotonic_non_increasing(row);
  }
}

double RateProfile::remaining_at(AlertTypeId t, double now, Interpolation mode) const {
  const auto& row = means_.at(t);
  if (row.empty()) return 0.0;
  const double clamped = std::clamp(now, 0.0, static_cast<double>(kCycleSeconds) - 1e-9);
  const auto b = static_cast<std::size_t>(clamped / bucket_width_);
  if (mode == Interpolation::kPiecewiseConstant) return row[b];
  const double start = static_cast<double>(b) * bucket_width_;
  const double frac = (clamped - start) / bucket_width_;
  const double next = b + 1 < row.size() ? row[b + 1] : 0.0;
  return row[b] + frac * (next - row[b]);
}

RateProfile fit(std::span<const AlertCycle> history, std::size_t num_types,
                std::int32_t bucket_width) {
  if (history.empty()) {
    throw Error(ErrorCode::kEmptyHistory, "at least one historical cycle is required");
  }
  if (bucket_width <= 0 || kCycleSeconds % bucket_width != 0) {
    throw Error(ErrorCode::kInvalidArgument, "bucket width must divide 86400");
  }
  const std::size_t buckets = static_cast<std::size_t>(kCycleSeconds / bucket_width);
  std::vector<std::vector<double>> sums(num_types, std::vector<double>(buckets, 0.0));
  std::vector<std::vector<double>> counts(num_types, std::vector<double>(buckets));

  for (const auto& cycle : history) {
    for (auto& row : counts) std::fill(row.begin(), row.end(), 0.0);
    for (const auto& alert : cycle) {
      if (alert.type_id >= num_types) {
        throw Error(ErrorCode::kInvalidArgument,
                    "alert type " + std::to_string(alert.type_id) + " out of range");
      }
      if (alert.timestamp_s < 0 || alert.timestamp_s >= kCycleSeconds) {
        throw Error(ErrorCode::kInvalidArgument,
                    "timestamp " + std::to_string(alert.timestamp_s) + " outside the cycle");
      }
      counts[alert.type_id][static_cast<std::size_t>(alert.timestamp_s / bucket_width)] += 1.0;
    }
    for (std::size_t t = 0; t < num_types; ++t) {
      double suffix = 0.0;
      for (std::size_t b = buckets; b-- > 0;) {
        suffix += counts[t][b];
        sums[t][b] += suffix;
      }
    }
  }
  const double n = static_cast<double>(history.size());
  for (auto& row : sums) {
    for (double& v : row) v /= n;
  }
  return RateProfile(bucket_width, std::move(sums));
}

std::vector<double> isotonic_non_increasing(std::span<const double> values) {
  struct Block {
    double sum;
    std::size_t count;
    double mean() const { return sum / static_cast<double>(count); }
  };
  std::vector<Block> blocks;
  blocks.reserve(values.size());
  for (double v : values) {
    blocks.push_back({v, 1});
    while (blocks.size() > 1 &&
           blocks[blocks.size() - 2].mean() < blocks.back().mean()) {
      const Block last = blocks.back();
      blocks.pop_back();
      blocks.back().sum += last.sum;
      blocks.back().count += last.count;
    }
  }
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& b : blocks) out.insert(out.end(), b.count, b.mean());
  return out;
}

std::size_t poisson_truncation_depth(double lambda, double tail) {
  if (!(lambda > 0.0)) return 0;
  const double log_lambda = std::log(lambda);
  const auto cap = static_cast<std::size_t>(lambda + 40.0 * std::sqrt(lambda) + 100.0);
  double log_pmf = -lambda;
  double cdf = std::exp(log_pmf);
  std::size_t d = 0;
  while (1.0 - cdf >= tail && d < cap) {
    ++d;
    log_pmf += log_lambda - std::log(static_cast<double>(d));
    cdf += std::exp(log_pmf);
  }
  return d;
}

double coverage_coefficient(double lambda, double audit_cost) {
  if (!(audit_cost > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "audit cost must be positive");
  }
  if (!(lambda > 0.0)) return 0.0;
  // At tiny lambda the whole tail is below the cut-off; keep d = 1 so that
  // kappa stays positive.
  const std::size_t depth = std::max<std::size_t>(1, poisson_truncation_depth(lambda));
  const double log_lambda = std::log(lambda);
  double log_pmf = -lambda;
  double sum = 0.0;
  for (std::size_t d = 1; d <= depth; ++d) {
    const double dd = static_cast<double>(d);
    log_pmf += log_lambda - std::log(dd);
    sum += std::exp(log_pmf) / dd;
  }
  return sum / audit_cost;
}

std::vector<double> FutureEstimate::lambdas() const {
  std::vector<double> out(types.size());
  for (std::size_t t = 0; t < types.size(); ++t) out[t] = types[t].lambda;
  return out;
}

std::vector<double> FutureEstimate::kappas() const {
  std::vector<double> out(types.size());
  for (std::size_t t = 0; t < types.size(); ++t) out[t] = types[t].kappa;
  return out;
}

FutureEstimate FutureEstimate::from_lambdas(std::span<const double> lambdas,
                                            const PayoffStructure& payoffs) {
  if (lambdas.size() != payoffs.size()) {
    throw Error(ErrorCode::kInvalidArgument, "lambda vector has wrong length");
  }
  FutureEstimate est;
  est.types.resize(lambdas.size());
  for (std::size_t t = 0; t < lambdas.size(); ++t) {
    if (!(lambdas[t] >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "lambda must be non-negative");
    }
    est.types[t].lambda = lambdas[t];
    est.types[t].kappa = coverage_coefficient(lambdas[t], payoffs[t].audit_cost);
  }
  return est;
}

FutureEstimate estimate(const RateProfile& profile, const PayoffStructure& payoffs,
                        double now, const FutureEstimate* prev,
                        const EstimateOptions& options) {
  if (!(now >= 0.0 && now < kCycleSeconds)) {
    throw Error(ErrorCode::kInvalidArgument, "time point outside the cycle");
  }
  if (profile.num_types() != payoffs.size()) {
    throw Error(ErrorCode::kInvalidArgument, "profile and payoff table differ in types");
  }
  const bool have_prev = prev != nullptr && prev->size() == payoffs.size();
  FutureEstimate est;
  est.types.resize(payoffs.size());
  for (std::size_t t = 0; t < payoffs.size(); ++t) {
    const double lambda = profile.remaining_at(t, now, options.interpolation);
    if (lambda < options.rollback_threshold && have_prev) {
      est.types[t] = prev->types[t];
      est.types[t].rollback_active = true;
      continue;
    }
    est.types[t].lambda = lambda;
    est.types[t].kappa = coverage_coefficient(lambda, payoffs[t].audit_cost);
  }
  return est;
}

}  // namespace sag
