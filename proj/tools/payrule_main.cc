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

// payrule: equilibrium solver for budget-constrained payment rules.
//
//   payrule solve --config <path>
//   payrule preset <name> [flags]
//   payrule diagnose --rule <csv> --config <path> [--shade s]
//   payrule list-presets
//
// Exit status: 0 ok, 1 config error, 2 infeasible budget, 3 no convergence.

#include <cstdio>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "payrule/experiment.h"
#include "payrule/rules.h"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kInfeasible = 2;
constexpr int kNotConverged = 3;

int Run(const payrule::ExperimentConfig& config) {
  const payrule::ExperimentResult result = payrule::RunExperiment(config);
  payrule::WriteArtifacts(config, result);
  std::cout << result.summary.dump(2) << '\n';
  if (!result.trace.converged) {
    std::cerr << "payrule: no convergence after " << result.trace.rounds.size()
              << " rounds; files written to " << config.output_dir << '\n';
    return kNotConverged;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budget-constrained payment rules: equilibrium solver"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> output_dir;
  auto* solve = app.add_subcommand("solve", "Run the experiment in a config file");
  solve->add_option("--config", config_path, "Flat JSON config")->required();
  solve->add_option("--output-dir", output_dir, "Override output_dir");

  std::string preset_name;
  std::map<std::string, std::optional<double>> reals = {
      {"shape", {}}, {"gamma", {}}, {"c", {}}, {"k", {}},
      {"sigma", {}}, {"w-sigma", {}}, {"alpha", {}}, {"tolerance", {}},
      {"max-shade", {}}, {"upper", {}}};
  std::optional<int> max_rounds, bins, subsamples;
  auto* preset = app.add_subcommand("preset", "Run a built-in experiment");
  preset->add_option("name", preset_name, "Preset name")->required();
  for (auto& [flag, slot] : reals) preset->add_option("--" + flag, slot);
  preset->add_option("--max-rounds", max_rounds);
  preset->add_option("--bins", bins);
  preset->add_option("--subsamples", subsamples);
  preset->add_option("--output-dir", output_dir);

  std::string rule_path;
  std::string diag_config;
  double shade = 0.0;
  auto* diagnose =
      app.add_subcommand("diagnose", "Report regret and incentive figures of a rule");
  diagnose->add_option("--rule", rule_path, "CSV as written to rule.csv")
      ->required();
  diagnose->add_option("--config", diag_config, "Flat JSON config")->required();
  diagnose->add_option("--shade", shade, "Constant shade for the budget figure");

  app.add_subcommand("list-presets", "Print the built-in presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (app.got_subcommand("list-presets")) {
      std::cout << payrule::ListPresets();
      return kOk;
    }
    if (app.got_subcommand("solve")) {
      payrule::ExperimentConfig config = payrule::LoadConfigFile(config_path);
      if (output_dir) config.output_dir = *output_dir;
      return Run(config);
    }
    if (app.got_subcommand("preset")) {
      nlohmann::json overrides = nlohmann::json::object();
      for (const auto& [flag, slot] : reals) {
        if (!slot) continue;
        if (flag == "sigma") {
          overrides["mu_sigma"] = *slot;
          if (!reals.at("w-sigma")) overrides["w_sigma"] = *slot;
          continue;
        }
        std::string key = flag;
        for (char& ch : key) ch = ch == '-' ? '_' : ch;
        overrides[key] = *slot;
      }
      if (max_rounds) overrides["max_rounds"] = *max_rounds;
      if (bins) overrides["bins"] = *bins;
      if (subsamples) overrides["subsamples"] = *subsamples;
      if (output_dir) overrides["output_dir"] = *output_dir;
      return Run(payrule::MakePreset(preset_name, overrides));
    }
    if (app.got_subcommand("diagnose")) {
      const payrule::ExperimentConfig config =
          payrule::LoadConfigFile(diag_config);
      const payrule::Grid grid = config.MakeGrid();
      std::optional<payrule::PaymentRule> rule;
      try {
        rule.emplace(payrule::ReadCsvFile(rule_path, grid,
                                          payrule::TabulatedKind::kRule));
      } catch (const std::exception& e) {
        throw payrule::ConfigError(e.what());
      }
      const payrule::Distribution f(config.distribution);
      const auto& eq = config.equilibrium;
      const double mu = eq.mode == payrule::Mode::kBlinded ? eq.mu_sigma : 0.0;
      const payrule::DiagnosticReport report =
          payrule::Diagnose(*rule, f, mu, payrule::Strategy::Constant(shade),
                            eq.ResolvedMaxShade(grid));
      std::cout << payrule::ToJson(report) << '\n';
      return kOk;
    }
  } catch (const payrule::ConfigError& e) {
    std::cerr << "payrule: config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const payrule::InfeasibleBudget& e) {
    std::cerr << "payrule: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::invalid_argument& e) {
    std::cerr << "payrule: invalid input: " << e.what() << '\n';
    return kConfigError;
  }
  return kOk;
}
