// Copyright 2026 The Payrule Authors
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

#include "payrule/center.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace payrule {
namespace {

constexpr double kSnap = 1e-12;

std::vector<double> Midpoints(const Grid& grid) { return grid.Midpoints(); }

void CheckSizes(size_t a, size_t b, size_t c) {
  if (a != b || b != c) {
    throw std::invalid_argument("knapsack inputs differ in length");
  }
}

}  // namespace

PaymentRule::PaymentRule(Tabulated tab)
    : tab_(tab.grid(), tab.values(), TabulatedKind::kRule) {
  const Grid& grid = tab_.grid();
  std::vector<double> values = tab_.values();
  for (int b = 0; b < grid.bins(); ++b) {
    const double cap = grid.Midpoint(b);
    const double slack = kSnap * std::max(1.0, std::abs(cap));
    if (values[b] < -slack || values[b] > cap + slack) {
      std::ostringstream msg;
      msg << "payment " << values[b] << " at psi=" << cap
          << " violates 0 <= r(psi) <= psi";
      throw std::invalid_argument(msg.str());
    }
    values[b] = std::clamp(values[b], 0.0, cap);
  }
  tab_ = Tabulated(grid, std::move(values), TabulatedKind::kRule);
}

PaymentRule::PaymentRule(const Grid& grid, std::vector<double> values)
    : PaymentRule(Tabulated(grid, std::move(values), TabulatedKind::kRule)) {}

PaymentRule PaymentRule::Vcg(const Grid& grid) {
  return PaymentRule(grid, std::vector<double>(grid.bins(), 0.0));
}

PaymentRule PaymentRule::FullCharge(const Grid& grid) {
  return PaymentRule(grid, grid.Midpoints());
}

int PaymentRule::InteriorBins(double tol) const {
  int count = 0;
  for (int b = 0; b < grid().bins(); ++b) {
    const double cap = grid().Midpoint(b);
    if (tab_[b] > tol && tab_[b] < cap - tol) ++count;
  }
  return count;
}

Budget::Budget(double gamma, double k_vcg) : gamma_(gamma), k_vcg_(k_vcg) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("gamma must lie in [0, 1]");
  }
  if (!(k_vcg > 0.0) || !std::isfinite(k_vcg)) {
    throw std::invalid_argument("k_vcg must be positive");
  }
}

double KVcg(const Distribution& f, const Grid& grid) { return Mean(f, grid); }

InfeasibleBudget::InfeasibleBudget(double required, double collectible)
    : std::runtime_error([&] {
        std::ostringstream msg;
        msg << "budget infeasible: need " << required << " but at most "
            << collectible << " is collectible (shortfall "
            << required - collectible << ")";
        return msg.str();
      }()),
      required_(required),
      collectible_(collectible) {}

std::vector<double> ConstraintWeights(const Strategy& strategy,
                                      std::span<const double> masses,
                                      const Grid& grid) {
  if (static_cast<int>(masses.size()) != grid.bins()) {
    throw std::invalid_argument("need one mass per bin");
  }
  const int last = grid.bins() - 1;
  std::vector<double> weights(grid.bins(), 0.0);
  for (int b = 0; b < grid.bins(); ++b) {
    const double m = masses[b];
    if (m == 0.0) continue;
    const double psi = grid.Midpoint(b);
    const double report = psi - strategy.At(psi);
    if (report < 0.0) continue;
    const double t = (report - grid.Midpoint(0)) / grid.width();
    if (t <= 0.0) {
      weights[0] += m;
    } else if (t >= last) {
      weights[last] += m;
    } else if (std::abs(t - std::round(t)) < kSnap) {
      weights[static_cast<int>(std::round(t))] += m;
    } else {
      const int j = static_cast<int>(t);
      const double frac = t - j;
      weights[j] += m * (1.0 - frac);
      weights[j + 1] += m * frac;
    }
  }
  return weights;
}

std::vector<double> ConstraintWeights(const Strategy& strategy,
                                      const Tabulated& constraint_density) {
  return ConstraintWeights(strategy, constraint_density.BinIntegrals(),
                           constraint_density.grid());
}

KnapsackSolution FillInOrder(std::span<const int> order,
                             std::span<const double> costs,
                             std::span<const double> weights,
                             std::span<const double> upper, double k) {
  CheckSizes(costs.size(), weights.size(), upper.size());
  const size_t n = costs.size();
  double collectible = 0.0;
  for (size_t b = 0; b < n; ++b) {
    if (weights[b] > 0.0) collectible += weights[b] * upper[b];
  }
  KnapsackSolution sol;
  sol.values.assign(n, 0.0);
  if (k > collectible) {
    if (k - collectible > kSnap * std::max(1.0, k)) {
      throw InfeasibleBudget(k, collectible);
    }
    k = collectible;
  }
  double remaining = k;
  for (int b : order) {
    if (remaining <= 0.0) break;
    if (!(weights[b] > 0.0)) continue;
    const double full = weights[b] * upper[b];
    if (full >= remaining) {
      sol.values[b] = std::min(upper[b], remaining / weights[b]);
      remaining = 0.0;
    } else {
      sol.values[b] = upper[b];
      remaining -= full;
    }
  }
  for (size_t b = 0; b < n; ++b) {
    sol.objective += costs[b] * sol.values[b];
    sol.collected += weights[b] * sol.values[b];
  }
  return sol;
}

KnapsackSolution SolveBoundedKnapsack(std::span<const double> costs,
                                      std::span<const double> weights,
                                      std::span<const double> upper, double k,
                                      TieOrder ties) {
  CheckSizes(costs.size(), weights.size(), upper.size());
  const int n = static_cast<int>(costs.size());
  std::vector<double> ratio(n);
  for (int b = 0; b < n; ++b) {
    ratio[b] = costs[b] > 0.0 ? weights[b] / costs[b]
                              : std::numeric_limits<double>::infinity();
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (ratio[a] != ratio[b]) return ratio[a] > ratio[b];
    return ties == TieOrder::kLowerIndexFirst ? a < b : a > b;
  });
  return FillInOrder(order, costs, weights, upper, k);
}

PaymentRule SolveCenter(std::span<const double> objective_masses,
                        std::span<const double> constraint_masses,
                        const Strategy& strategy, const Budget& budget,
                        const Grid& grid) {
  if (static_cast<int>(objective_masses.size()) != grid.bins()) {
    throw std::invalid_argument("need one objective mass per bin");
  }
  if (budget.k() <= 0.0) return PaymentRule::Vcg(grid);
  const std::vector<double> weights =
      ConstraintWeights(strategy, constraint_masses, grid);
  const std::vector<double> upper = Midpoints(grid);
  KnapsackSolution sol =
      SolveBoundedKnapsack(objective_masses, weights, upper, budget.k());
  return PaymentRule(grid, std::move(sol.values));
}

PaymentRule SolveCenter(const Tabulated& objective_density,
                        const Tabulated& constraint_density,
                        const Strategy& strategy, const Budget& budget) {
  if (!(objective_density.grid() == constraint_density.grid())) {
    throw std::invalid_argument("densities live on different grids");
  }
  return SolveCenter(objective_density.BinIntegrals(),
                     constraint_density.BinIntegrals(), strategy, budget,
                     objective_density.grid());
}

PaymentRule SolveCenterRatio(const Distribution& f, double shade,
                             const Budget& budget, const Grid& grid) {
  const std::vector<double> masses = f.BinMasses(grid);
  if (budget.k() <= 0.0) return PaymentRule::Vcg(grid);
  const std::vector<double> weights =
      ConstraintWeights(Strategy::Constant(shade), masses, grid);
  const int n = grid.bins();
  std::vector<double> rho(n);
  for (int b = 0; b < n; ++b) {
    rho[b] = masses[b] > 0.0 ? weights[b] / masses[b]
                             : (weights[b] > 0.0
                                    ? std::numeric_limits<double>::infinity()
                                    : 0.0);
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return rho[a] > rho[b]; });

  const double collectible = [&] {
    double total = 0.0;
    for (int b = 0; b < n; ++b) total += weights[b] * grid.Midpoint(b);
    return total;
  }();
  if (budget.k() - collectible > kSnap * std::max(1.0, budget.k())) {
    throw InfeasibleBudget(budget.k(), collectible);
  }
  std::vector<double> r(n, 0.0);
  double remaining = std::min(budget.k(), collectible);
  for (int b : order) {
    if (!(weights[b] > 0.0)) continue;
    const double z = remaining / weights[b];
    r[b] = std::min(grid.Midpoint(b), z);
    remaining -= r[b] * weights[b];
    if (remaining <= 0.0) break;
  }
  return PaymentRule(grid, std::move(r));
}

std::vector<double> PdfRatios(const Distribution& f, const Strategy& strategy,
                              const Grid& grid) {
  const int s = grid.subsamples();
  std::vector<double> out(grid.bins(), 0.0);
  for (int b = 0; b < grid.bins(); ++b) {
    const double shade = strategy.At(grid.Midpoint(b));
    double sum = 0.0;
    for (int j = 0; j < s; ++j) {
      const double x = grid.Node(b * s + j);
      const double here = f.ParentPdf(x);
      const double there = f.ParentPdf(x + shade);
      if (here > 0.0) {
        sum += there / here;
      } else if (there > 0.0) {
        sum = std::numeric_limits<double>::infinity();
        break;
      }
    }
    out[b] = sum / s;
  }
  return out;
}

double CollectedBudget(const PaymentRule& rule,
                       std::span<const double> weights) {
  double total = 0.0;
  for (int b = 0; b < rule.grid().bins(); ++b) total += weights[b] * rule[b];
  return total;
}

double CenterObjective(const PaymentRule& rule,
                       std::span<const double> objective_masses) {
  double total = 0.0;
  for (int b = 0; b < rule.grid().bins(); ++b) {
    total += objective_masses[b] * rule[b];
  }
  return total;
}

}  // namespace payrule
