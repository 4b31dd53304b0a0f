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

// Closed-form reference rules written as r(psi), calibrated to collect the
// budget, and diagnostics for comparing any rule against them.

#ifndef PAYRULE_RULES_H_
#define PAYRULE_RULES_H_

#include <limits>
#include <string>

#include "payrule/center.h"
#include "payrule/distributions.h"
#include "payrule/grid.h"
#include "payrule/payment_rule.h"
#include "payrule/strategy.h"

namespace payrule {

enum class RuleFamily {
  kVcg,        // r == 0.
  kThreshold,  // r = min(psi, C).
  kSmall,      // r = psi above the cutoff, 0 below: surplus to small psi.
  kLarge,      // r = psi below the cutoff, 0 above: surplus to large psi.
};

const char* ToString(RuleFamily family);

// Realizes a family on the grid. Small and Large charge the bin containing
// the cutoff in proportion to the part of the bin on the charged side, so
// the collected budget moves continuously with the cutoff.
PaymentRule RealizeReference(RuleFamily family, double parameter,
                             const Grid& grid);

struct ReferenceRule {
  RuleFamily family = RuleFamily::kVcg;
  double parameter = 0.0;
  PaymentRule realized;
};

// Bisection on the cutoff (or C) until the rule collects budget.k() against
// `constraint_masses` shaded by `strategy`, within 1e-6 * k. Throws
// InfeasibleBudget when even the fully charging member falls short.
ReferenceRule Calibrate(RuleFamily family,
                        std::span<const double> constraint_masses,
                        const Strategy& strategy, const Budget& budget,
                        const Grid& grid);
ReferenceRule Calibrate(RuleFamily family, const Distribution& f,
                        const Strategy& strategy, const Budget& budget,
                        const Grid& grid);

struct DiagnosticReport {
  double regret_at_truth = 0.0;
  double worst_case_regret = 0.0;
  double deviation_incentive = 0.0;
  double budget_collected = 0.0;
  double best_response_shade = 0.0;
};

// mu_sigma > 0 measures the deviation incentive with blinded signals; zero
// uses the uninformed single-shade bidder. The budget is collected against
// f shaded by `strategy`.
DiagnosticReport Diagnose(
    const PaymentRule& rule, const Distribution& f, double mu_sigma,
    const Strategy& strategy,
    double max_shade = std::numeric_limits<double>::infinity());

// Flat JSON object with the report fields in declaration order.
std::string ToJson(const DiagnosticReport& report);

}  // namespace payrule

#endif  // PAYRULE_RULES_H_
