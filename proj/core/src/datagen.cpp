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

#include "sag/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sag/error.hpp"
#include "sag/rng.hpp"

namespace sag {

std::array<double, 24> default_hourly_shape() {
  std::array<double, 24> shape{};
  for (int h = 0; h < 24; ++h) {
    if (h >= 8 && h <= 17) {
      shape[h] = 1.0;
    } else if (h == 6 || h == 7 || h == 18 || h == 19) {
      shape[h] = 0.3;
    } else {
      shape[h] = 0.13;
    }
  }
  return shape;
}

namespace {

void check(const ArrivalSpec& spec) {
  for (const auto& t : spec.types) {
    if (!(t.daily_mean >= 0.0) || !(t.daily_stdev >= 0.0) || !std::isfinite(t.daily_mean) ||
        !std::isfinite(t.daily_stdev)) {
      throw Error(ErrorCode::kInvalidSpec, "daily mean and stdev must be finite and >= 0");
    }
  }
  double mass = 0.0;
  for (double w : spec.hourly_shape) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::kInvalidSpec, "hourly weights must be finite and >= 0");
    }
    mass += w;
  }
  if (mass <= 0.0) throw Error(ErrorCode::kInvalidSpec, "hourly shape has no mass");
}

// Normal(mean, stdev) conditioned on >= 0, then rounded. Rejection is cheap
// because mean >= 0 keeps the acceptance rate at or above one half.
std::int64_t draw_count(const TypeArrival& t, CounterRng& rng) {
  if (t.daily_mean == 0.0) return 0;
  if (t.daily_stdev == 0.0) return std::llround(t.daily_mean);
  std::normal_distribution<double> normal(t.daily_mean, t.daily_stdev);
  double x = normal(rng);
  while (x < 0.0) x = normal(rng);
  return std::llround(x);
}

}  // namespace

std::vector<AlertCycle> generate_cycles(const ArrivalSpec& spec, std::size_t n_cycles,
                                        std::uint64_t seed) {
  check(spec);
  const CounterRng root = CounterRng(seed).derive("datagen");
  std::discrete_distribution<int> hour(spec.hourly_shape.begin(), spec.hourly_shape.end());
  std::uniform_int_distribution<std::int32_t> second(0, 3599);

  std::vector<AlertCycle> cycles(n_cycles);
  for (std::size_t c = 0; c < n_cycles; ++c) {
    CounterRng rng = root.derive(static_cast<std::uint64_t>(c));
    AlertCycle& cycle = cycles[c];
    for (AlertTypeId t = 0; t < spec.types.size(); ++t) {
      const std::int64_t n = draw_count(spec.types[t], rng);
      for (std::int64_t k = 0; k < n; ++k) {
        const std::int32_t ts = hour(rng) * 3600 + second(rng);
        cycle.push_back({ts, t});
      }
    }
    std::sort(cycle.begin(), cycle.end(), [](const AlertEvent& a, const AlertEvent& b) {
      return a.timestamp_s != b.timestamp_s ? a.timestamp_s < b.timestamp_s
                                            : a.type_id < b.type_id;
    });
  }
  return cycles;
}

}  // namespace sag
