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

#include "payrule/rules.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "payrule/bidder.h"

namespace payrule {
namespace {

double Collected(RuleFamily family, double parameter,
                 const std::vector<double>& weights, const Grid& grid) {
  return CollectedBudget(RealizeReference(family, parameter, grid), weights);
}

}  // namespace

const char* ToString(RuleFamily family) {
  switch (family) {
    case RuleFamily::kVcg:
      return "vcg";
    case RuleFamily::kThreshold:
      return "threshold";
    case RuleFamily::kSmall:
      return "small";
    case RuleFamily::kLarge:
      return "large";
  }
  return "unknown";
}

PaymentRule RealizeReference(RuleFamily family, double parameter,
                             const Grid& grid) {
  std::vector<double> r(grid.bins(), 0.0);
  for (int b = 0; b < grid.bins(); ++b) {
    const double mid = grid.Midpoint(b);
    const double lo = grid.LowerEdge(b);
    const double hi = grid.UpperEdge(b);
    switch (family) {
      case RuleFamily::kVcg:
        break;
      case RuleFamily::kThreshold:
        r[b] = std::clamp(parameter, 0.0, mid);
        break;
      case RuleFamily::kSmall:
        r[b] = mid * std::clamp((hi - parameter) / (hi - lo), 0.0, 1.0);
        break;
      case RuleFamily::kLarge:
        r[b] = mid * std::clamp((parameter - lo) / (hi - lo), 0.0, 1.0);
        break;
    }
  }
  return PaymentRule(grid, std::move(r));
}

ReferenceRule Calibrate(RuleFamily family,
                        std::span<const double> constraint_masses,
                        const Strategy& strategy, const Budget& budget,
                        const Grid& grid) {
  const double k = budget.k();
  // Parameter at which each family charges nothing / everything.
  double none = 0.0;
  double all = grid.upper();
  switch (family) {
    case RuleFamily::kVcg:
      if (k > 0.0) {
        throw std::invalid_argument("VCG cannot collect a positive budget");
      }
      return {family, 0.0, PaymentRule::Vcg(grid)};
    case RuleFamily::kSmall:
      none = grid.upper();
      all = grid.lower();
      break;
    case RuleFamily::kThreshold:
    case RuleFamily::kLarge:
      none = grid.lower();
      all = grid.upper();
      break;
  }
  if (k <= 0.0) return {family, none, RealizeReference(family, none, grid)};

  const std::vector<double> weights =
      ConstraintWeights(strategy, constraint_masses, grid);
  const double most = Collected(family, all, weights, grid);
  if (most < k * (1.0 - 1e-12)) throw InfeasibleBudget(k, most);

  // Invariant: collected(none_side) < k <= collected(all_side).
  double below = none;
  double above = all;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (below + above);
    if (mid == below || mid == above) break;
    if (Collected(family, mid, weights, grid) >= k) {
      above = mid;
    } else {
      below = mid;
    }
    if (std::abs(Collected(family, above, weights, grid) - k) <= 1e-9 * k) {
      break;
    }
  }
  return {family, above, RealizeReference(family, above, grid)};
}

ReferenceRule Calibrate(RuleFamily family, const Distribution& f,
                        const Strategy& strategy, const Budget& budget,
                        const Grid& grid) {
  return Calibrate(family, f.BinMasses(grid), strategy, budget, grid);
}

DiagnosticReport Diagnose(const PaymentRule& rule, const Distribution& f,
                          double mu_sigma, const Strategy& strategy,
                          double max_shade) {
  const Grid& grid = rule.grid();
  DiagnosticReport report;
  report.regret_at_truth = RegretAtTruth(rule, f);
  report.worst_case_regret =
      *std::max_element(rule.values().begin(), rule.values().end());
  report.deviation_incentive = mu_sigma > 0.0
                                   ? BlindedRegretDI(rule, f, mu_sigma, max_shade)
                                   : ExAnteDI(rule, f, max_shade);
  report.budget_collected = CollectedBudget(
      rule, ConstraintWeights(strategy, f.BinMasses(grid), grid));
  report.best_response_shade =
      BestResponseConstant(rule, f.OnNodes(grid), max_shade).shade;
  return report;
}

std::string ToJson(const DiagnosticReport& report) {
  nlohmann::ordered_json j;
  j["regret_at_truth"] = report.regret_at_truth;
  j["worst_case_regret"] = report.worst_case_regret;
  j["deviation_incentive"] = report.deviation_incentive;
  j["budget_collected"] = report.budget_collected;
  j["best_response_shade"] = report.best_response_shade;
  return j.dump(2);
}

}  // namespace payrule
