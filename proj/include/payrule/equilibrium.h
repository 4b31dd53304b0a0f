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

// Damped iterated best response between the center (payment rule) and the
// bidder (shade). Each round the center solves its LP against the damped
// shade, the bidder best-responds to the new rule, and both damped iterates
// move a fraction alpha toward the fresh responses.

#ifndef PAYRULE_EQUILIBRIUM_H_
#define PAYRULE_EQUILIBRIUM_H_

#include <optional>
#include <string>
#include <vector>

#include "payrule/center.h"
#include "payrule/distributions.h"
#include "payrule/grid.h"
#include "payrule/payment_rule.h"
#include "payrule/strategy.h"

namespace payrule {

enum class Mode { kExAnte, kBlinded };

const char* ToString(Mode mode);

struct EquilibriumConfig {
  Mode mode = Mode::kExAnte;
  double mu_sigma = 0.0;  // Blinded mode only.
  double w_sigma = 0.0;   // Blinded mode only.
  double gamma = 0.5;
  double alpha = 0.5;
  int max_rounds = 50;
  double tolerance = 1e-3;
  // Largest shade the bidder may choose. Unset means one bin width.
  std::optional<double> max_shade;

  // Throws std::invalid_argument when a field is out of range.
  void Validate() const;
  double ResolvedMaxShade(const Grid& grid) const;
};

struct EquilibriumRound {
  PaymentRule rule;         // Center best response this round.
  Strategy strategy;        // Bidder best response to `rule`.
  PaymentRule damped_rule;
  Strategy damped_strategy;
  double r_delta = 0.0;     // Sup-norm change of the damped rule.
  double s_delta = 0.0;     // Sup-norm change of the damped shade.
  double collected = 0.0;   // Budget `rule` collects at the shade it faced.
};

struct EquilibriumTrace {
  std::vector<EquilibriumRound> rounds;
  bool converged = false;
  // Last center best response and the damped shade it converged with.
  PaymentRule final_rule;
  Strategy final_strategy;
  Budget budget;
  double max_shade = 0.0;
};

// Starts from truthful bidding. Center infeasibility propagates as
// InfeasibleBudget; running out of rounds returns converged == false.
EquilibriumTrace FindEquilibrium(const Distribution& f,
                                 const EquilibriumConfig& config,
                                 const Grid& grid);

// Plain-text report: settings, per-round deltas, final figures.
std::string TraceReport(const EquilibriumTrace& trace,
                        const EquilibriumConfig& config);

}  // namespace payrule

#endif  // PAYRULE_EQUILIBRIUM_H_
