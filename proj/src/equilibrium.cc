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

#include "payrule/equilibrium.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "payrule/bidder.h"
#include "payrule/blinding.h"

namespace payrule {
namespace {

std::vector<double> Blend(const std::vector<double>& from,
                          const std::vector<double>& to, double alpha) {
  std::vector<double> out(from.size());
  for (size_t i = 0; i < from.size(); ++i) {
    out[i] = (1.0 - alpha) * from[i] + alpha * to[i];
  }
  return out;
}

}  // namespace

const char* ToString(Mode mode) {
  return mode == Mode::kExAnte ? "ex-ante" : "blinded";
}

void EquilibriumConfig::Validate() const {
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1]");
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("gamma must lie in [0, 1]");
  }
  if (mode == Mode::kBlinded && (!(mu_sigma > 0.0) || !(w_sigma > 0.0))) {
    throw std::invalid_argument("blinded mode needs mu_sigma, w_sigma > 0");
  }
  if (max_shade && !(*max_shade >= 0.0)) {
    throw std::invalid_argument("max_shade must be nonnegative");
  }
}

double EquilibriumConfig::ResolvedMaxShade(const Grid& grid) const {
  return std::min(max_shade.value_or(grid.width()), grid.upper());
}

EquilibriumTrace FindEquilibrium(const Distribution& f,
                                 const EquilibriumConfig& config,
                                 const Grid& grid) {
  config.Validate();
  const Budget budget(config.gamma, KVcg(f, grid));
  const double cap = config.ResolvedMaxShade(grid);
  const bool blinded = config.mode == Mode::kBlinded;

  std::vector<double> objective_masses;
  std::vector<double> constraint_masses;
  NodeValues belief;
  std::vector<NodeValues> posteriors;
  if (blinded) {
    const BlindedModel model =
        MakeBlindedModel(f, config.mu_sigma, config.w_sigma, grid);
    objective_masses = model.g.BinIntegrals();
    constraint_masses = model.h.BinIntegrals();
    posteriors = MidpointPosteriors(f, config.mu_sigma, grid);
  } else {
    objective_masses = f.BinMasses(grid);
    constraint_masses = objective_masses;
    belief = f.OnNodes(grid);
  }

  const std::vector<double> zeros(grid.bins(), 0.0);
  Strategy damped_strategy =
      blinded ? Strategy::Functional(Tabulated(grid, zeros,
                                               TabulatedKind::kStrategy))
              : Strategy::Constant(0.0);
  std::vector<double> damped_rule = zeros;

  EquilibriumTrace trace{{}, false, PaymentRule::Vcg(grid), damped_strategy,
                         budget, cap};
  for (int round = 0; round < config.max_rounds; ++round) {
    const PaymentRule rule = SolveCenter(objective_masses, constraint_masses,
                                         damped_strategy, budget, grid);
    const double collected = CollectedBudget(
        rule, ConstraintWeights(damped_strategy, constraint_masses, grid));
    const Strategy response =
        blinded ? BestResponseFunctional(rule, posteriors, cap).strategy
                : Strategy::Constant(
                      BestResponseConstant(rule, belief, cap).shade);

    // The first rule has nothing to be averaged with.
    const std::vector<double> next_rule =
        round == 0 ? rule.values()
                   : Blend(damped_rule, rule.values(), config.alpha);
    const double r_delta = SupDistance(next_rule, damped_rule);
    double s_delta;
    Strategy next_strategy = damped_strategy;
    if (blinded) {
      const std::vector<double> next = Blend(
          damped_strategy.table().values(), response.table().values(),
          config.alpha);
      s_delta = SupDistance(next, damped_strategy.table().values());
      next_strategy = Strategy::Functional(
          Tabulated(grid, next, TabulatedKind::kStrategy));
    } else {
      const double next = (1.0 - config.alpha) * damped_strategy.constant() +
                          config.alpha * response.constant();
      s_delta = std::abs(next - damped_strategy.constant());
      next_strategy = Strategy::Constant(next);
    }

    damped_rule = next_rule;
    damped_strategy = next_strategy;
    trace.rounds.push_back(EquilibriumRound{
        rule, response, PaymentRule(grid, damped_rule), damped_strategy,
        r_delta, s_delta, collected});
    trace.final_rule = rule;
    trace.final_strategy = damped_strategy;
    if (r_delta <= config.tolerance && s_delta <= config.tolerance) {
      trace.converged = true;
      break;
    }
  }
  return trace;
}

std::string TraceReport(const EquilibriumTrace& trace,
                        const EquilibriumConfig& config) {
  std::ostringstream out;
  char line[160];
  out << "mode: " << ToString(config.mode) << '\n';
  if (config.mode == Mode::kBlinded) {
    out << "mu_sigma: " << config.mu_sigma << '\n'
        << "w_sigma: " << config.w_sigma << '\n';
  }
  out << "gamma: " << config.gamma << '\n'
      << "k_vcg: " << trace.budget.k_vcg() << '\n'
      << "k: " << trace.budget.k() << '\n'
      << "alpha: " << config.alpha << '\n'
      << "tolerance: " << config.tolerance << '\n'
      << "max_shade: " << trace.max_shade << '\n'
      << "rounds: " << trace.rounds.size() << '\n'
      << "converged: " << (trace.converged ? "true" : "false") << '\n'
      << "round r_delta s_delta collected\n";
  for (size_t i = 0; i < trace.rounds.size(); ++i) {
    const EquilibriumRound& r = trace.rounds[i];
    std::snprintf(line, sizeof(line), "%zu %.9g %.9g %.9g\n", i + 1,
                  r.r_delta, r.s_delta, r.collected);
    out << line;
  }
  if (!trace.rounds.empty()) {
    out << "final_budget_collected: " << trace.rounds.back().collected << '\n';
  }
  return out.str();
}

}  // namespace payrule
