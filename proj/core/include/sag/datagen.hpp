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

// Synthetic alert logs matched to per-type daily count statistics.

#ifndef SAG_DATAGEN_HPP_
#define SAG_DATAGEN_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "sag/types.hpp"

namespace sag {

struct TypeArrival {
  double daily_mean = 0.0;
  double daily_stdev = 0.0;
};

struct ArrivalSpec {
  std::vector<TypeArrival> types;
  std::array<double, 24> hourly_shape{};  // relative weight per hour of day
};

// Working-hours plateau (hours 8-17 carry 80% of the mass) with light tails.
std::array<double, 24> default_hourly_shape();

// Per cycle and type: count ~ round(max(0, Normal(mean, stdev))), timestamps
// drawn hour-by-shape then uniformly within the hour. Cycles are sorted by
// timestamp. Cycle i depends only on (seed, i).
// Throws kInvalidSpec on negative moments or a shape without positive mass.
std::vector<AlertCycle> generate_cycles(const ArrivalSpec& spec, std::size_t n_cycles,
                                        std::uint64_t seed);

}  // namespace sag

#endif  // SAG_DATAGEN_HPP_
