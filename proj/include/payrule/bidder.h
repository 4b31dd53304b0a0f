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

// Bidder best responses. The bidder's retained regret when shading by s is
//
//   E[ r(psi - s) if psi >= s, else psi ]
//
// under its belief over psi: winners pay r at the shaded report, bidders who
// shade below their critical value lose the trade and forgo psi.

#ifndef PAYRULE_BIDDER_H_
#define PAYRULE_BIDDER_H_

#include <limits>
#include <vector>

#include "payrule/distributions.h"
#include "payrule/grid.h"
#include "payrule/payment_rule.h"
#include "payrule/strategy.h"

namespace payrule {

// Expected retained regret of shading by `shade` under `belief` (a density
// at the rule grid's quadrature nodes).
double ShadeObjective(double shade, const PaymentRule& rule,
                      const NodeValues& belief);
double ShadeObjective(double shade, const PaymentRule& rule,
                      const Tabulated& belief);

struct ShadeResponse {
  double shade = 0.0;
  double objective = 0.0;
};

// Global minimizer of ShadeObjective over [0, max_shade]: a scan over 0,
// the bin midpoints below max_shade and max_shade itself, Brent refinement
// inside every scanned basin, and among minima within 1e-9 * (1 + |best|)
// of the best value the one closest to zero. max_shade is clamped to the
// grid's upper bound.
ShadeResponse BestResponseConstant(
    const PaymentRule& rule, const NodeValues& belief,
    double max_shade = std::numeric_limits<double>::infinity());
ShadeResponse BestResponseConstant(
    const PaymentRule& rule, const Tabulated& belief,
    double max_shade = std::numeric_limits<double>::infinity());

struct FunctionalResponse {
  Strategy strategy;
  // Minimized objective for the signal at each bin midpoint.
  std::vector<double> objectives;
};

// Per-signal best responses: for the signal at each bin midpoint, the
// constant best response against the posterior over the true profit.
FunctionalResponse BestResponseFunctional(
    const PaymentRule& rule, const std::vector<NodeValues>& posteriors,
    double max_shade = std::numeric_limits<double>::infinity());
Strategy BestResponseFunctional(
    const PaymentRule& rule, const Distribution& f, double mu_sigma,
    double max_shade = std::numeric_limits<double>::infinity());

// Regret at truth, integral of r * f.
double RegretAtTruth(const PaymentRule& rule, const Distribution& f);

// Gain from best responding instead of reporting truthfully with only the
// blinded signal available: regret at truth under f minus the g-weighted
// per-signal minimum of the retained regret.
double BlindedRegretDI(
    const PaymentRule& rule, const Distribution& f, double mu_sigma,
    double max_shade = std::numeric_limits<double>::infinity());

// Uninformed variant: one shade against f itself.
double ExAnteDI(const PaymentRule& rule, const Distribution& f,
                double max_shade = std::numeric_limits<double>::infinity());

}  // namespace payrule

#endif  // PAYRULE_BIDDER_H_
