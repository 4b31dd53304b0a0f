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

// Center best response. On the grid the center's problem is the LP
//
//   min  sum_b c_b r_b
//   s.t. sum_b w_b r_b >= k,   0 <= r_b <= midpoint(b)
//
// where c_b is the objective mass of bin b and w_b the mass that lands on
// rule node b once bidders shade. With one linear constraint and box bounds
// the LP is a continuous knapsack, solved exactly by filling bins in
// decreasing w_b / c_b order.

#ifndef PAYRULE_CENTER_H_
#define PAYRULE_CENTER_H_

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "payrule/distributions.h"
#include "payrule/grid.h"
#include "payrule/payment_rule.h"
#include "payrule/strategy.h"

namespace payrule {

// Amount the center must collect above critical values: k = gamma * k_vcg,
// where k_vcg is the mean potential profit.
class Budget {
 public:
  // Throws std::invalid_argument unless gamma in [0, 1] and k_vcg > 0.
  Budget(double gamma, double k_vcg);

  double gamma() const { return gamma_; }
  double k_vcg() const { return k_vcg_; }
  double k() const { return gamma_ * k_vcg_; }

 private:
  double gamma_;
  double k_vcg_;
};

double KVcg(const Distribution& f, const Grid& grid);

class InfeasibleBudget : public std::runtime_error {
 public:
  InfeasibleBudget(double required, double collectible);
  double required() const { return required_; }
  double collectible() const { return collectible_; }
  double shortfall() const { return required_ - collectible_; }

 private:
  double required_;
  double collectible_;
};

// Scatters each source bin's mass from psi = midpoint(b) to the shaded
// report psi - s(psi) on the rule nodes, splitting it between the two
// neighbouring nodes by linear-interpolation weights. Reports below zero
// lose and reach no node; reports outside the outermost midpoints go to the
// nearest node.
std::vector<double> ConstraintWeights(const Strategy& strategy,
                                      std::span<const double> masses,
                                      const Grid& grid);
std::vector<double> ConstraintWeights(const Strategy& strategy,
                                      const Tabulated& constraint_density);

enum class TieOrder { kLowerIndexFirst, kHigherIndexFirst };

struct KnapsackSolution {
  std::vector<double> values;
  double objective = 0.0;
  double collected = 0.0;
};

// min c.x s.t. w.x >= k, 0 <= x <= upper. Items with c_b == 0 < w_b come
// first; equal ratios follow `ties`. Throws InfeasibleBudget when
// w.upper < k.
KnapsackSolution SolveBoundedKnapsack(std::span<const double> costs,
                                      std::span<const double> weights,
                                      std::span<const double> upper, double k,
                                      TieOrder ties = TieOrder::kLowerIndexFirst);

// Fills items in the given order, each to its bound or to the remaining
// requirement. Same infeasibility rule.
KnapsackSolution FillInOrder(std::span<const int> order,
                             std::span<const double> costs,
                             std::span<const double> weights,
                             std::span<const double> upper, double k);

PaymentRule SolveCenter(std::span<const double> objective_masses,
                        std::span<const double> constraint_masses,
                        const Strategy& strategy, const Budget& budget,
                        const Grid& grid);
PaymentRule SolveCenter(const Tabulated& objective_density,
                        const Tabulated& constraint_density,
                        const Strategy& strategy, const Budget& budget);

// Greedy ratio method for a constant shade: bins are taken in descending
// order of (mass reaching the bin after shading) / (mass of the bin), each
// charged min(midpoint, remaining / weight). Gives the same objective as
// SolveCenter with f as both objective and constraint density.
PaymentRule SolveCenterRatio(const Distribution& f, double shade,
                             const Budget& budget, const Grid& grid);

// Bin-averaged parent-density ratio f(x + s(x)) / f(x) for every bin: how
// much budget a unit charge at x buys per unit of regret at truth.
// Where f(x) == 0 the ratio is +inf if f(x + s) > 0 and 0 otherwise.
std::vector<double> PdfRatios(const Distribution& f, const Strategy& strategy,
                              const Grid& grid);

double CollectedBudget(const PaymentRule& rule,
                       std::span<const double> weights);
double CenterObjective(const PaymentRule& rule,
                       std::span<const double> objective_masses);

}  // namespace payrule

#endif  // PAYRULE_CENTER_H_
