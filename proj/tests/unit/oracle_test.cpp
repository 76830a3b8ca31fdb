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
#include "sag/equilibrium.hpp"
#include "sag/error.hpp"
#include "sag/oracle.hpp"
#include "support.hpp"

using namespace sag;
using doctest::Approx;

TEST_SUITE("oracle") {

TEST_CASE("one type with no budget sits at the corner") {
  const PayoffStructure pay({{"only", 3.0, -7.0, -4.0, 2.0, 1.0, 0.2, -1.0}});
  FutureEstimate est;
  est.types = {{2.0, 0.5, false}};
  const auto g = grid_best_scheme(pay, est, 0.0, 0.01);
  CHECK(g.utility == Approx(-7.0));
  CHECK(g.scheme[0].q0 == Approx(1.0));
}

TEST_CASE("grid agrees with the signaling program") {
  const auto pay = testing::two_type_payoffs();
  const auto est = testing::two_type_estimate();
  const auto lp = solve_ossp(pay, est, 1.0);
  const double tol = objective_lipschitz(pay, est, 1.0) * 0.01 * 6;
  for (double step : {0.01, 0.005}) {
    const auto g = grid_best_scheme(pay, est, 1.0, step);
    CHECK(std::abs(g.utility - lp.auditor_utility) <= tol);
    CHECK(g.utility <= lp.auditor_utility + 1e-9);
  }
}

TEST_CASE("exhaustive warn grid confirms the best-type shortcut") {
  const auto pay = testing::two_type_payoffs();
  const auto est = testing::two_type_estimate();
  const auto shortcut = grid_best_scheme(pay, est, 1.0, 0.01, GridMode::kShortcut);
  const auto full = grid_best_scheme(pay, est, 1.0, 0.01, GridMode::kExhaustive);
  CHECK(full.utility == Approx(shortcut.utility));
  for (std::size_t t = 0; t < 2; ++t) {
    CHECK(full.candidate_utilities[t] == Approx(shortcut.candidate_utilities[t]));
  }
  // A different state, coarser grid.
  FutureEstimate other = est;
  other.types[0] = {7.0, 0.2, false};
  const auto a = grid_best_scheme(pay, other, 2.0, 0.02, GridMode::kShortcut);
  const auto b = grid_best_scheme(pay, other, 2.0, 0.02, GridMode::kExhaustive);
  CHECK(a.utility == Approx(b.utility));
}

TEST_CASE("grid rejects oversized or malformed requests") {
  const TypePayoff t{"t", 2.0, -8.0, -10.0, 5.0, 1.0, 0.1, -1.0};
  const PayoffStructure four({t, t, t, t});
  FutureEstimate est;
  est.types.assign(4, {3.0, 0.5, false});
  try {
    grid_best_scheme(four, est, 1.0, 0.01);
    FAIL("expected TooManyTypes");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kTooManyTypes);
  }
  const PayoffStructure three({t, t, t});
  est.types.resize(3);
  CHECK_THROWS_AS(grid_best_scheme(three, est, 1.0, 0.01, GridMode::kExhaustive), Error);
  CHECK_THROWS_AS(grid_best_scheme(three, est, 1.0, 0.03), Error);
}

TEST_CASE("three-type grid agrees with both programs") {
  const PayoffStructure pay({{"a", 2.0, -8.0, -10.0, 5.0, 1.0, 0.3, -2.0},
                             {"b", 1.0, -5.0, -6.0, 4.0, 1.0, 0.2, -1.0},
                             {"c", 4.0, -9.0, -3.0, 6.0, 1.0, 0.1, -3.0}});
  const std::vector<double> lambdas{4.0, 2.0, 6.0};
  const auto est = FutureEstimate::from_lambdas(lambdas, pay);
  const double budget = 2.0;
  const double l = objective_lipschitz(pay, est, budget);
  const auto ossp = solve_ossp(pay, est, budget);
  const auto g = grid_best_scheme(pay, est, budget, 0.01);
  CHECK(std::abs(g.utility - ossp.auditor_utility) <= l * 0.01 * 9);
  CHECK(g.utility <= ossp.auditor_utility + 1e-9);
  const auto sse = solve_online_sse(pay, est, budget);
  const auto gs = grid_online_sse(pay, est, budget);
  CHECK(std::abs(gs.utility - sse.auditor_utility) <= l * 0.01 * 3);
}

TEST_CASE("property suite") {
  const auto report = verify_properties(300, 123);
  CHECK(report.instances == 300);
  CHECK(report.ok());
  CHECK(report.attack_regime > 0);
  for (const auto& c : report.counts) {
    CAPTURE(c.property);
    CHECK(c.violations == 0);
    CHECK(c.checked > 0);
  }
}

TEST_CASE("violations carry the instance") {
  // An instance is checked once per call; a clean one records nothing.
  OracleInstance inst;
  inst.types = {{"a", 2.0, -8.0, -10.0, 5.0, 1.0, 0.186, -1.0}};
  inst.lambdas = {3.0};
  inst.budget = 0.5;
  PropertyReport report;
  check_instance(inst, 0, report);
  CHECK(report.instances == 1);
  CHECK(report.violations.empty());
}

}  // TEST_SUITE
