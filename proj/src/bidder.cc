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

#include "payrule/bidder.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

#include "payrule/blinding.h"

namespace payrule {

Strategy Strategy::Constant(double shade) {
  if (!(shade >= 0.0) || !std::isfinite(shade)) {
    throw std::invalid_argument("shade must be finite and nonnegative");
  }
  Strategy s;
  s.constant_ = shade;
  return s;
}

Strategy Strategy::Functional(Tabulated tab) {
  if (tab.kind() != TabulatedKind::kStrategy) {
    tab = Tabulated(tab.grid(), tab.values(), TabulatedKind::kStrategy);
  }
  for (double v : tab.values()) {
    if (v < 0.0 || v > tab.grid().upper()) {
      throw std::invalid_argument("shade values must lie in [0, upper]");
    }
  }
  Strategy s;
  s.table_ = std::move(tab);
  return s;
}

Tabulated Strategy::OnGrid(const Grid& grid) const {
  if (table_) return *table_;
  return Tabulated::Constant(grid, constant_, TabulatedKind::kStrategy);
}

namespace {

constexpr double kTieTolerance = 1e-9;
constexpr int kBrentBits = std::numeric_limits<double>::digits / 2;
constexpr std::uintmax_t kBrentMaxIterations = 200;

void CheckBelief(const PaymentRule& rule, const NodeValues& belief) {
  if (static_cast<int>(belief.values.size()) != rule.grid().num_nodes()) {
    throw std::invalid_argument("belief is not sampled on the rule's grid");
  }
}

}  // namespace

double ShadeObjective(double shade, const PaymentRule& rule,
                      const NodeValues& belief) {
  CheckBelief(rule, belief);
  const Grid& grid = rule.grid();
  const Tabulated& r = rule.tab();
  double sum = 0.0;
  for (int i = 0; i < grid.num_nodes(); ++i) {
    const double p = belief.values[i];
    if (p == 0.0) continue;
    const double x = grid.Node(i);
    sum += p * (x >= shade ? r.Interior(x - shade) : x);
  }
  return sum * grid.node_step();
}

double ShadeObjective(double shade, const PaymentRule& rule,
                      const Tabulated& belief) {
  return ShadeObjective(shade, rule, belief.OnNodes());
}

ShadeResponse BestResponseConstant(const PaymentRule& rule,
                                   const NodeValues& belief,
                                   double max_shade) {
  CheckBelief(rule, belief);
  const Grid& grid = rule.grid();
  const double cap = std::clamp(max_shade, 0.0, grid.upper());
  auto objective = [&](double s) { return ShadeObjective(s, rule, belief); };

  std::vector<double> candidates{0.0};
  for (int b = 0; b < grid.bins(); ++b) {
    const double m = grid.Midpoint(b);
    if (m > 0.0 && m < cap) candidates.push_back(m);
  }
  if (cap > candidates.back()) candidates.push_back(cap);
  const int n = static_cast<int>(candidates.size());
  std::vector<double> values(n);
  for (int i = 0; i < n; ++i) values[i] = objective(candidates[i]);

  std::vector<ShadeResponse> minima;
  for (int i = 0; i < n; ++i) {
    const bool left_ok = i == 0 || values[i] <= values[i - 1];
    const bool right_ok = i == n - 1 || values[i] <= values[i + 1];
    if (!left_ok || !right_ok) continue;
    ShadeResponse local{candidates[i], values[i]};
    const double lo = candidates[std::max(i - 1, 0)];
    const double hi = candidates[std::min(i + 1, n - 1)];
    if (hi > lo) {
      std::uintmax_t iterations = kBrentMaxIterations;
      const auto [x, fx] = boost::math::tools::brent_find_minima(
          objective, lo, hi, kBrentBits, iterations);
      if (fx < local.objective) local = {x, fx};
    }
    minima.push_back(local);
  }

  double best = minima.front().objective;
  for (const auto& m : minima) best = std::min(best, m.objective);
  const double tol = kTieTolerance * (1.0 + std::abs(best));
  ShadeResponse chosen{std::numeric_limits<double>::infinity(), best};
  for (const auto& m : minima) {
    if (m.objective <= best + tol && std::abs(m.shade) < std::abs(chosen.shade)) {
      chosen = m;
    }
  }
  return chosen;
}

ShadeResponse BestResponseConstant(const PaymentRule& rule,
                                   const Tabulated& belief, double max_shade) {
  return BestResponseConstant(rule, belief.OnNodes(), max_shade);
}

FunctionalResponse BestResponseFunctional(
    const PaymentRule& rule, const std::vector<NodeValues>& posteriors,
    double max_shade) {
  const Grid& grid = rule.grid();
  if (static_cast<int>(posteriors.size()) != grid.bins()) {
    throw std::invalid_argument("need one posterior per bin midpoint");
  }
  std::vector<double> shades(grid.bins());
  std::vector<double> objectives(grid.bins());
  for (int b = 0; b < grid.bins(); ++b) {
    const ShadeResponse resp =
        BestResponseConstant(rule, posteriors[b], max_shade);
    shades[b] = resp.shade;
    objectives[b] = resp.objective;
  }
  return FunctionalResponse{
      Strategy::Functional(
          Tabulated(grid, std::move(shades), TabulatedKind::kStrategy)),
      std::move(objectives)};
}

Strategy BestResponseFunctional(const PaymentRule& rule, const Distribution& f,
                                double mu_sigma, double max_shade) {
  return BestResponseFunctional(
             rule, MidpointPosteriors(f, mu_sigma, rule.grid()), max_shade)
      .strategy;
}

double RegretAtTruth(const PaymentRule& rule, const Distribution& f) {
  const Grid& grid = rule.grid();
  const NodeValues pdf = f.OnNodes(grid);
  double sum = 0.0;
  for (int i = 0; i < grid.num_nodes(); ++i) {
    if (pdf.values[i] == 0.0) continue;
    sum += pdf.values[i] * rule.tab().Interior(grid.Node(i));
  }
  return sum * grid.node_step();
}

double BlindedRegretDI(const PaymentRule& rule, const Distribution& f,
                       double mu_sigma, double max_shade) {
  const Grid& grid = rule.grid();
  const std::vector<double> signal_mass = Blind(f, mu_sigma, grid).BinIntegrals();
  const FunctionalResponse resp = BestResponseFunctional(
      rule, MidpointPosteriors(f, mu_sigma, grid), max_shade);
  double retained = 0.0;
  for (int b = 0; b < grid.bins(); ++b) {
    retained += signal_mass[b] * resp.objectives[b];
  }
  return RegretAtTruth(rule, f) - retained;
}

double ExAnteDI(const PaymentRule& rule, const Distribution& f,
                double max_shade) {
  const NodeValues pdf = f.OnNodes(rule.grid());
  return RegretAtTruth(rule, f) -
         BestResponseConstant(rule, pdf, max_shade).objective;
}

}  // namespace payrule
