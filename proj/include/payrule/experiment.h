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

// Experiment configuration, built-in presets and the artifact writer behind
// the command-line tool.
//
// A configuration is one flat JSON object. Every key is optional:
//
//   lower, upper, bins, subsamples         grid (0, 10, 50, 200)
//   family                                 gpd | burr | normal | uniform |
//                                          empirical
//   location, scale, shape                 gpd (0, 1, 1)
//   c, k, scale                            burr (2, 1, 1)
//   mean, stddev                           normal
//   samples_file                           empirical, one value per line
//   mode                                   ex-ante | blinded
//   mu_sigma, w_sigma                      blinded (w_sigma defaults to
//                                          mu_sigma)
//   gamma, alpha, max_rounds, tolerance    (0.5, 0.5, 50, 1e-3)
//   max_shade                              one bin width when absent
//   output_dir                             ("out")

#ifndef PAYRULE_EXPERIMENT_H_
#define PAYRULE_EXPERIMENT_H_

#include <map>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "payrule/distributions.h"
#include "payrule/equilibrium.h"
#include "payrule/grid.h"

namespace payrule {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  double lower = 0.0;
  double upper = 10.0;
  int bins = 50;
  int subsamples = 200;
  DistributionSpec distribution{Gpd{0.0, 1.0, 1.0}, 0.0, 10.0};
  std::string samples_file;
  EquilibriumConfig equilibrium;
  std::string output_dir = "out";

  Grid MakeGrid() const;
};

// Throws ConfigError on unknown keys, wrong types or invalid values.
ExperimentConfig ParseConfig(const nlohmann::json& doc);
ExperimentConfig LoadConfigFile(const std::string& path);

// Resolved settings, defaults included, in a fixed key order.
nlohmann::ordered_json ResolvedConfigJson(const ExperimentConfig& config);

// Preset names map to config templates; `overrides` holds flat config keys
// that replace template values. Throws ConfigError for an unknown name.
ExperimentConfig MakePreset(const std::string& name,
                            const nlohmann::json& overrides);
std::string ListPresets();

struct ExperimentResult {
  EquilibriumTrace trace;
  double deviation_incentive = 0.0;
  double deviation_incentive_unbounded = 0.0;
  double regret_at_truth = 0.0;
  double runtime_seconds = 0.0;
  nlohmann::ordered_json summary;
};

// Solves for the equilibrium and computes the reported figures. Does not
// touch the filesystem. InfeasibleBudget propagates.
ExperimentResult RunExperiment(const ExperimentConfig& config);

// Writes rule.csv, strategy.csv, ratio.csv, surface.csv, summary.json,
// trace.txt and timing.json into config.output_dir, creating it if needed.
void WriteArtifacts(const ExperimentConfig& config,
                    const ExperimentResult& result);

// Payment-or-loss surface over (psi, shade): r(psi - shade) while the
// shaded bid still wins, psi once it loses. Shades run over multiples of the
// bin width from 0 to the grid's upper bound.
void WriteSurfaceCsv(const std::string& path, const PaymentRule& rule);

}  // namespace payrule

#endif  // PAYRULE_EXPERIMENT_H_
