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

#include "support.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace sag::testing {

namespace {

struct Plane {
  std::vector<double> a;
  double b;
};

// Gaussian elimination with partial pivoting; false when singular.
bool solve_square(std::vector<std::vector<double>> m, std::vector<double> rhs,
                  std::vector<double>& x) {
  const std::size_t n = rhs.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    }
    if (std::abs(m[piv][c]) < 1e-10) return false;
    std::swap(m[piv], m[c]);
    std::swap(rhs[piv], rhs[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = m[r][c] / m[c][c];
      if (f == 0.0) continue;
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return true;
}

}  // namespace

std::optional<double> enumerate_vertices(const lp::LinearProgram& p, double tol) {
  const std::size_t n = p.num_vars();
  std::vector<Plane> forced;  // equalities, always active
  std::vector<Plane> optional;
  for (std::size_t i = 0; i < p.eq_lhs.size(); ++i) forced.push_back({p.eq_lhs[i], p.eq_rhs[i]});
  for (std::size_t i = 0; i < p.le_lhs.size(); ++i) optional.push_back({p.le_lhs[i], p.le_rhs[i]});
  for (std::size_t j = 0; j < n; ++j) {
    const lp::Bounds b = p.bounds.empty() ? lp::Bounds{} : p.bounds[j];
    std::vector<double> unit(n, 0.0);
    unit[j] = 1.0;
    optional.push_back({unit, b.lo});
    if (std::isfinite(b.hi)) optional.push_back({unit, b.hi});
  }
  if (forced.size() > n) return std::nullopt;
  const std::size_t pick = n - forced.size();
  if (pick > optional.size()) return std::nullopt;

  std::optional<double> best;
  std::vector<std::size_t> idx(pick);
  for (std::size_t i = 0; i < pick; ++i) idx[i] = i;
  std::vector<double> x;
  while (true) {
    std::vector<std::vector<double>> m;
    std::vector<double> rhs;
    for (const auto& f : forced) {
      m.push_back(f.a);
      rhs.push_back(f.b);
    }
    for (std::size_t i : idx) {
      m.push_back(optional[i].a);
      rhs.push_back(optional[i].b);
    }
    if (solve_square(m, rhs, x) && lp::max_violation(p, x) <= tol) {
      double v = 0.0;
      for (std::size_t j = 0; j < n; ++j) v += p.objective[j] * x[j];
      if (!best || v > *best) best = v;
    }
    // next combination
    std::size_t k = pick;
    while (k > 0 && idx[k - 1] == optional.size() - pick + k - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t i = k; i < pick; ++i) idx[i] = idx[i - 1] + 1;
  }
  return best;
}

lp::LinearProgram random_program(CounterRng& rng, std::size_t max_vars) {
  auto u = [&rng](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto pick = [&rng](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  const std::size_t n = pick(1, max_vars);
  lp::LinearProgram p(n);
  for (auto& c : p.objective) c = u(-5.0, 5.0);

  std::vector<double> cap(n);
  for (auto& a : cap) a = u(0.1, 3.0);
  p.add_le(cap, u(1.0, 10.0));

  const std::size_t rows = pick(0, 4);
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<double> row(n);
    for (auto& a : row) a = u(0.0, 1.0) < 0.3 ? 0.0 : u(-3.0, 3.0);
    if (u(0.0, 1.0) < 0.5) {
      p.add_le(row, u(-2.0, 6.0));
    } else {
      p.add_ge(row, u(-6.0, 2.0));
    }
  }
  if (n >= 2 && u(0.0, 1.0) < 0.3) {
    std::vector<double> row(n);
    for (auto& a : row) a = u(-1.0, 2.0);
    p.add_eq(row, u(-1.0, 3.0));
  }
  for (auto& b : p.bounds) {
    if (u(0.0, 1.0) < 0.2) b.lo = -u(0.0, 2.0);
    if (u(0.0, 1.0) < 0.2) b.hi = b.lo + u(0.0, 3.0);
  }
  return p;
}

PayoffStructure two_type_payoffs() {
  return PayoffStructure({{"A", 2.0, -8.0, -10.0, 5.0, 1.0, 0.186, -1.0},
                          {"B", 1.0, -5.0, -6.0, 4.0, 1.0, 0.186, -1.0}});
}

FutureEstimate two_type_estimate() {
  FutureEstimate est;
  est.types = {{3.0, 0.5, false}, {3.0, 0.5, false}};
  return est;
}

}  // namespace sag::testing
