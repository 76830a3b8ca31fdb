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

// Remaining-alert estimates from historical audit cycles.

#ifndef SAG_ARRIVAL_HPP_
#define SAG_ARRIVAL_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sag/types.hpp"

namespace sag {

enum class Interpolation { kPiecewiseConstant, kLinear };

// Per type and time bucket, the mean number of alerts arriving at or after
// the bucket start until the end of the cycle.
class RateProfile {
 public:
  RateProfile() = default;
  // `remaining_mean[t][b]`; each row is made non-increasing with
  // pool-adjacent-violators.
  RateProfile(std::int32_t bucket_width, std::vector<std::vector<double>> remaining_mean);

  std::int32_t bucket_width() const noexcept { return bucket_width_; }
  std::size_t num_types() const noexcept { return means_.size(); }
  std::size_t num_buckets() const noexcept {
    return means_.empty() ? 0 : means_.front().size();
  }
  std::span<const double> means(AlertTypeId t) const { return means_.at(t); }

  // Expected remaining alerts of type t at `now` (seconds since cycle start).
  double remaining_at(AlertTypeId t, double now, Interpolation mode) const;

 private:
  std::int32_t bucket_width_ = 3600;
  std::vector<std::vector<double>> means_;
};

// Throws kEmptyHistory with no cycles and kInvalidArgument when the bucket
// width does not divide a day or an alert is out of range.
RateProfile fit(std::span<const AlertCycle> history, std::size_t num_types,
                std::int32_t bucket_width = 3600);

// Least-squares non-increasing fit (pool adjacent violators, unit weights).
std::vector<double> isotonic_non_increasing(std::span<const double> values);

// Smallest D with Poisson(lambda) upper-tail mass P(d > D) below `tail`.
std::size_t poisson_truncation_depth(double lambda, double tail = 1e-9);

// E[1/d ; d >= 1] for d ~ Poisson(lambda), divided by the audit cost.
// Coverage of a type is its allocated budget times this coefficient.
double coverage_coefficient(double lambda, double audit_cost);

struct TypeEstimate {
  double lambda = 0.0;  // expected remaining alerts
  double kappa = 0.0;   // coverage per unit of budget
  bool rollback_active = false;
};

struct FutureEstimate {
  std::vector<TypeEstimate> types;

  std::size_t size() const noexcept { return types.size(); }
  std::vector<double> lambdas() const;
  std::vector<double> kappas() const;

  // Builds an estimate straight from lambdas, deriving kappa per type.
  static FutureEstimate from_lambdas(std::span<const double> lambdas,
                                     const PayoffStructure& payoffs);
};

struct EstimateOptions {
  double rollback_threshold = 1.0;
  Interpolation interpolation = Interpolation::kPiecewiseConstant;
};

// Per-type estimate at `now`. A type whose fresh lambda falls below the
// rollback threshold reuses `prev` (when given), which keeps late-cycle
// coverage from collapsing.
FutureEstimate estimate(const RateProfile& profile, const PayoffStructure& payoffs,
                        double now, const FutureEstimate* prev,
                        const EstimateOptions& options = {});

}  // namespace sag

#endif  // SAG_ARRIVAL_HPP_
