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

#include "sag/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sag/error.hpp"

namespace sag::lp {
namespace {

constexpr double kPivotTolerance = 1e-9;
constexpr double kRatioTieTolerance = 1e-12;

// Row-major simplex tableau; column `cols` holds the right-hand side.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * (cols + 1), 0.0), basis_(rows, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& at(std::size_t i, std::size_t j) { return data_[i * (cols_ + 1) + j]; }
  double at(std::size_t i, std::size_t j) const { return data_[i * (cols_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, cols_); }
  double rhs(std::size_t i) const { return at(i, cols_); }
  std::size_t& basic(std::size_t i) { return basis_[i]; }
  std::size_t basic(std::size_t i) const { return basis_[i]; }

  void pivot(std::size_t r, std::size_t c) {
    const double inv = 1.0 / at(r, c);
    for (std::size_t j = 0; j <= cols_; ++j) at(r, j) *= inv;
    at(r, c) = 1.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
      if (rhs(i) < 0.0 && rhs(i) > -1e-13) rhs(i) = 0.0;
    }
    basis_[r] = c;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
};

enum class PhaseResult { kOptimal, kUnbounded };

class Simplex {
 public:
  Simplex(Tableau& tab, std::size_t pivot_limit) : tab_(tab), pivot_limit_(pivot_limit) {}

  std::size_t pivots() const { return pivots_; }

  std::vector<double> reduced_costs(std::span<const double> cost) const {
    std::vector<double> d(cost.begin(), cost.end());
    for (std::size_t i = 0; i < tab_.rows(); ++i) {
      const double cb = cost[tab_.basic(i)];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < d.size(); ++j) d[j] -= cb * tab_.at(i, j);
    }
    return d;
  }

  // Maximizes cost . y over columns [0, allowed) with Bland's rule.
  PhaseResult run(std::span<const double> cost, std::size_t allowed, double tol) {
    for (;;) {
      const auto d = reduced_costs(cost);
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (d[j] > tol) {
          enter = j;
          break;
        }
      }
      if (enter == allowed) return PhaseResult::kOptimal;

      std::size_t leave = tab_.rows();
      double best = 0.0;
      for (std::size_t i = 0; i < tab_.rows(); ++i) {
        const double a = tab_.at(i, enter);
        if (a <= kPivotTolerance) continue;
        const double ratio = std::max(0.0, tab_.rhs(i)) / a;
        if (leave == tab_.rows() ||
            ratio < best - kRatioTieTolerance * std::max(1.0, best)) {
          leave = i;
          best = ratio;
        } else if (ratio <= best + kRatioTieTolerance * std::max(1.0, best) &&
                   tab_.basic(i) < tab_.basic(leave)) {
          leave = i;
          best = std::min(best, ratio);
        }
      }
      if (leave == tab_.rows()) return PhaseResult::kUnbounded;
      step(leave, enter);
    }
  }

  void step(std::size_t r, std::size_t c) {
    if (++pivots_ > pivot_limit_) {
      throw Error(ErrorCode::kCycleLimit,
                  "pivot count exceeded " + std::to_string(pivot_limit_));
    }
    tab_.pivot(r, c);
  }

 private:
  Tableau& tab_;
  std::size_t pivot_limit_;
  std::size_t pivots_ = 0;
};

struct StandardRow {
  std::vector<double> coeffs;
  double rhs = 0.0;
  bool equality = false;
};

void check_row(const std::vector<double>& row, std::size_t n, const char* what) {
  if (row.size() != n) {
    throw Error(ErrorCode::kMalformedProgram,
                std::string(what) + " row has " + std::to_string(row.size()) +
                    " columns, expected " + std::to_string(n));
  }
  for (double v : row) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kMalformedProgram, std::string(what) + " row is not finite");
    }
  }
}

void validate(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  if (n == 0) throw Error(ErrorCode::kMalformedProgram, "program has no variables");
  for (double c : lp.objective) {
    if (!std::isfinite(c)) throw Error(ErrorCode::kMalformedProgram, "objective is not finite");
  }
  if (lp.le_lhs.size() != lp.le_rhs.size()) {
    throw Error(ErrorCode::kMalformedProgram, "inequality rhs length mismatch");
  }
  if (lp.eq_lhs.size() != lp.eq_rhs.size()) {
    throw Error(ErrorCode::kMalformedProgram, "equality rhs length mismatch");
  }
  for (const auto& row : lp.le_lhs) check_row(row, n, "inequality");
  for (const auto& row : lp.eq_lhs) check_row(row, n, "equality");
  for (double b : lp.le_rhs) {
    if (!std::isfinite(b)) throw Error(ErrorCode::kMalformedProgram, "rhs is not finite");
  }
  for (double b : lp.eq_rhs) {
    if (!std::isfinite(b)) throw Error(ErrorCode::kMalformedProgram, "rhs is not finite");
  }
  if (!lp.bounds.empty() && lp.bounds.size() != n) {
    throw Error(ErrorCode::kMalformedProgram, "bounds length mismatch");
  }
  for (const auto& b : lp.bounds) {
    if (!std::isfinite(b.lo) || std::isnan(b.hi) || b.hi == -std::numeric_limits<double>::infinity()) {
      throw Error(ErrorCode::kMalformedProgram, "lower bounds must be finite");
    }
  }
}

Bounds bounds_of(const LinearProgram& lp, std::size_t j) {
  return lp.bounds.empty() ? Bounds{} : lp.bounds[j];
}

}  // namespace

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "Optimal";
    case LpStatus::kInfeasible: return "Infeasible";
    case LpStatus::kUnbounded: return "Unbounded";
  }
  return "Unknown";
}

LpOutcome solve(const LinearProgram& lp) {
  validate(lp);
  const std::size_t n = lp.num_vars();

  // Shift x = lo + y so every structural column is y >= 0; finite upper
  // bounds become ordinary rows.
  std::vector<double> lo(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto b = bounds_of(lp, j);
    if (b.lo > b.hi) return LpOutcome{};
    lo[j] = b.lo;
  }
  auto shifted_rhs = [&](const std::vector<double>& row, double rhs) {
    for (std::size_t j = 0; j < n; ++j) rhs -= row[j] * lo[j];
    return rhs;
  };

  std::vector<StandardRow> rows;
  for (std::size_t i = 0; i < lp.le_lhs.size(); ++i) {
    rows.push_back({lp.le_lhs[i], shifted_rhs(lp.le_lhs[i], lp.le_rhs[i]), false});
  }
  for (std::size_t j = 0; j < n; ++j) {
    const auto b = bounds_of(lp, j);
    if (std::isfinite(b.hi)) {
      std::vector<double> row(n, 0.0);
      row[j] = 1.0;
      rows.push_back({std::move(row), b.hi - b.lo, false});
    }
  }
  for (std::size_t i = 0; i < lp.eq_lhs.size(); ++i) {
    rows.push_back({lp.eq_lhs[i], shifted_rhs(lp.eq_lhs[i], lp.eq_rhs[i]), true});
  }

  const std::size_t m = rows.size();
  std::size_t n_slack = 0;
  std::size_t n_art = 0;
  for (const auto& r : rows) {
    if (!r.equality) ++n_slack;
    if (r.equality || r.rhs < 0.0) ++n_art;
  }
  const std::size_t art_begin = n + n_slack;
  const std::size_t total = art_begin + n_art;

  Tableau tab(m, total);
  std::size_t next_slack = n;
  std::size_t next_art = art_begin;
  double rhs_scale = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& r = rows[i];
    const double sign = r.rhs < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = sign * r.coeffs[j];
    tab.rhs(i) = sign * r.rhs;
    rhs_scale = std::max(rhs_scale, std::abs(r.rhs));
    if (!r.equality) {
      tab.at(i, next_slack) = sign;
      if (sign > 0.0) tab.basic(i) = next_slack;
      ++next_slack;
    }
    if (r.equality || sign < 0.0) {
      tab.at(i, next_art) = 1.0;
      tab.basic(i) = next_art;
      ++next_art;
    }
  }

  Simplex simplex(tab, 50 * (m + total));
  LpOutcome out;

  if (n_art > 0) {
    std::vector<double> phase1(total, 0.0);
    for (std::size_t j = art_begin; j < total; ++j) phase1[j] = -1.0;
    simplex.run(phase1, total, 1e-11);
    double infeasibility = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (tab.basic(i) >= art_begin) infeasibility += tab.rhs(i);
    }
    if (infeasibility > 1e-9 * rhs_scale) {
      out.status = LpStatus::kInfeasible;
      out.pivots = simplex.pivots();
      return out;
    }
    // Drive remaining (zero-valued) artificials out of the basis. Rows where
    // that is impossible are redundant; their artificial stays basic at zero
    // and can never re-enter because phase two excludes artificial columns.
    for (std::size_t i = 0; i < m; ++i) {
      if (tab.basic(i) < art_begin) continue;
      std::size_t col = art_begin;
      double best = kPivotTolerance;
      for (std::size_t j = 0; j < art_begin; ++j) {
        if (std::abs(tab.at(i, j)) > best) {
          best = std::abs(tab.at(i, j));
          col = j;
        }
      }
      if (col != art_begin) simplex.step(i, col);
    }
  }

  std::vector<double> phase2(total, 0.0);
  double cost_scale = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    phase2[j] = lp.objective[j];
    cost_scale = std::max(cost_scale, std::abs(lp.objective[j]));
  }
  const double tol = 1e-9 * cost_scale;
  if (simplex.run(phase2, art_begin, tol) == PhaseResult::kUnbounded) {
    out.status = LpStatus::kUnbounded;
    out.pivots = simplex.pivots();
    return out;
  }

  std::vector<double> y(total, 0.0);
  for (std::size_t i = 0; i < m; ++i) y[tab.basic(i)] = std::max(0.0, tab.rhs(i));
  out.status = LpStatus::kOptimal;
  out.solution.resize(n);
  out.objective_value = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    out.solution[j] = lo[j] + y[j];
    out.objective_value += lp.objective[j] * out.solution[j];
  }
  auto d = simplex.reduced_costs(phase2);
  d.resize(art_begin);
  out.reduced_costs = std::move(d);
  out.pivots = simplex.pivots();
  return out;
}

double max_violation(const LinearProgram& lp, std::span<const double> x) {
  const std::size_t n = lp.num_vars();
  if (x.size() != n) throw Error(ErrorCode::kMalformedProgram, "point has wrong dimension");
  auto dot = [&](const std::vector<double>& row) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += row[j] * x[j];
    return s;
  };
  double worst = 0.0;
  for (std::size_t i = 0; i < lp.le_lhs.size(); ++i) {
    worst = std::max(worst, dot(lp.le_lhs[i]) - lp.le_rhs[i]);
  }
  for (std::size_t i = 0; i < lp.eq_lhs.size(); ++i) {
    worst = std::max(worst, std::abs(dot(lp.eq_lhs[i]) - lp.eq_rhs[i]));
  }
  for (std::size_t j = 0; j < n; ++j) {
    const auto b = bounds_of(lp, j);
    worst = std::max(worst, b.lo - x[j]);
    if (std::isfinite(b.hi)) worst = std::max(worst, x[j] - b.hi);
  }
  return worst;
}

}  // namespace sag::lp
