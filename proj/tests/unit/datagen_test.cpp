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

#include <cmath>

#include "doctest.h"
#include "sag/datagen.hpp"
#include "sag/defaults.hpp"
#include "sag/error.hpp"

using namespace sag;

TEST_SUITE("datagen") {

TEST_CASE("daily counts match the reference statistics") {
  const auto spec = defaults::reference_arrivals();
  const auto cycles = generate_cycles(spec, 1000, 2024);
  for (std::size_t t = 0; t < spec.types.size(); ++t) {
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& c : cycles) {
      double n = 0.0;
      for (const auto& a : c) n += a.type_id == t;
      sum += n;
      sum_sq += n * n;
    }
    const double mean = sum / 1000.0;
    const double var = sum_sq / 1000.0 - mean * mean;
    const double sd = spec.types[t].daily_stdev;
    CAPTURE(t);
    CHECK(std::abs(mean - spec.types[t].daily_mean) <= 3.0 * sd / std::sqrt(1000.0));
    // Standard error of a sample variance under normality: sd^2 * sqrt(2/(n-1)).
    CHECK(std::abs(var - sd * sd) <= 3.0 * sd * sd * std::sqrt(2.0 / 999.0) + 1.0 / 12.0);
  }
}

TEST_CASE("working hours carry most alerts") {
  const auto cycles = generate_cycles(defaults::reference_arrivals(), 50, 5);
  double total = 0.0, work = 0.0;
  for (const auto& c : cycles) {
    for (const auto& a : c) {
      total += 1.0;
      const int h = a.timestamp_s / 3600;
      work += h >= 8 && h <= 17;
    }
  }
  CHECK(work / total == doctest::Approx(0.8).epsilon(0.02));
  const auto shape = default_hourly_shape();
  double mass = 0.0;
  for (double w : shape) mass += w;
  double office = 0.0;
  for (int h = 8; h <= 17; ++h) office += shape[h];
  CHECK(office / mass == doctest::Approx(0.8));
}

TEST_CASE("cycles are sorted and deterministic") {
  const auto spec = defaults::reference_arrivals();
  const auto a = generate_cycles(spec, 5, 77);
  const auto b = generate_cycles(spec, 5, 77);
  const auto c = generate_cycles(spec, 5, 78);
  CHECK(a == b);
  CHECK(a != c);
  for (const auto& cycle : a) {
    for (std::size_t i = 1; i < cycle.size(); ++i) CHECK(cycle[i - 1].timestamp_s <= cycle[i].timestamp_s);
    for (const auto& e : cycle) {
      CHECK(e.timestamp_s >= 0);
      CHECK(e.timestamp_s < kCycleSeconds);
    }
  }
  // Cycle i does not depend on how many cycles are drawn.
  const auto longer = generate_cycles(spec, 8, 77);
  CHECK(longer[3] == a[3]);
}

TEST_CASE("zero mean means no alerts") {
  ArrivalSpec spec;
  spec.types = {{0.0, 3.0}, {5.0, 0.0}};
  spec.hourly_shape = default_hourly_shape();
  for (const auto& c : generate_cycles(spec, 20, 1)) {
    std::size_t n1 = 0;
    for (const auto& e : c) {
      CHECK(e.type_id == 1);
      n1 += e.type_id == 1;
    }
    CHECK(n1 == 5);
  }
}

TEST_CASE("invalid specs are rejected") {
  ArrivalSpec spec;
  spec.types = {{-1.0, 1.0}};
  spec.hourly_shape = default_hourly_shape();
  CHECK_THROWS_AS(generate_cycles(spec, 1, 1), Error);
  spec.types = {{1.0, 1.0}};
  spec.hourly_shape = {};
  try {
    generate_cycles(spec, 1, 1);
    FAIL("expected InvalidSpec");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidSpec);
  }
}

}  // TEST_SUITE
