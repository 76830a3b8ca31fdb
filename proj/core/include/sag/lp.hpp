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

// Dense two-phase primal simplex for the small programs built by the
// equilibrium solvers (a few dozen variables).

#ifndef SAG_LP_HPP_
#define SAG_LP_HPP_

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace sag::lp {

// Constraint tolerance guaranteed for Optimal outcomes.
inline constexpr double kFeasibilityTolerance = 1e-7;

struct Bounds {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
};

// maximize objective . x
//   s.t. le_lhs x <= le_rhs, eq_lhs x == eq_rhs, lo <= x <= hi.
// Lower bounds must be finite; upper bounds may be +inf.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> le_lhs;
  std::vector<double> le_rhs;
  std::vector<std::vector<double>> eq_lhs;
  std::vector<double> eq_rhs;
  std::vector<Bounds> bounds;  // empty means [0, +inf) for every variable

  LinearProgram() = default;
  explicit LinearProgram(std::size_t num_vars)
      : objective(num_vars, 0.0), bounds(num_vars) {}

  std::size_t num_vars() const noexcept { return objective.size(); }

  void add_le(std::vector<double> row, double rhs) {
    le_lhs.push_back(std::move(row));
    le_rhs.push_back(rhs);
  }
  void add_ge(std::vector<double> row, double rhs) {
    for (double& v : row) v = -v;
    add_le(std::move(row), -rhs);
  }
  void add_eq(std::vector<double> row, double rhs) {
    eq_lhs.push_back(std::move(row));
    eq_rhs.push_back(rhs);
  }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* to_string(LpStatus status);

struct LpOutcome {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> solution;  // empty unless Optimal
  double objective_value = 0.0;
  // Reduced costs of the final basis over structural and slack columns;
  // all <= tolerance at an optimum of a maximization.
  std::vector<double> reduced_costs;
  std::size_t pivots = 0;
};

// Throws Error(kMalformedProgram) on dimension mismatch or non-finite data,
// Error(kCycleLimit) when the pivot count exceeds 50 * (rows + cols).
LpOutcome solve(const LinearProgram& lp);

// Largest constraint or bound violation of x (0 when feasible).
double max_violation(const LinearProgram& lp, std::span<const double> x);

}  // namespace sag::lp

#endif  // SAG_LP_HPP_
