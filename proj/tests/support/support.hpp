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

// Test-only helpers: a vertex-enumeration LP oracle, a random LP generator
// and the small fixtures shared by unit and acceptance tests.

#ifndef SAG_TESTS_SUPPORT_SUPPORT_HPP_
#define SAG_TESTS_SUPPORT_SUPPORT_HPP_

#include <cstdint>
#include <optional>

#include "sag/arrival.hpp"
#include "sag/lp.hpp"
#include "sag/rng.hpp"
#include "sag/types.hpp"

namespace sag::testing {

// Best objective over all basic feasible solutions, found by solving every
// n x n subsystem of active constraints. nullopt when no vertex is feasible.
// Only meaningful for bounded programs with finite lower bounds.
std::optional<double> enumerate_vertices(const lp::LinearProgram& program, double tol = 1e-7);

// Random bounded program with 1..max_vars variables; some instances are
// infeasible. Boundedness comes from one all-positive <= row.
lp::LinearProgram random_program(CounterRng& rng, std::size_t max_vars = 8);

// Two types: A (u_ac -10, u_au 5, u_dc 2, u_du -8) and B (u_ac -6, u_au 4,
// u_dc 1, u_du -5), audit cost 1, quit probability 0.186, quit loss -1.
PayoffStructure two_type_payoffs();
// kappa 0.5 for both types and lambda 3.
FutureEstimate two_type_estimate();

}  // namespace sag::testing

#endif  // SAG_TESTS_SUPPORT_SUPPORT_HPP_
