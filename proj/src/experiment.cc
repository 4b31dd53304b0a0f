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

#include "payrule/experiment.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "payrule/bidder.h"
#include "payrule/center.h"

namespace payrule {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const std::set<std::string>& KnownKeys() {
  static const std::set<std::string> keys = {
      "lower",  "upper",    "bins",       "subsamples", "family",
      "location", "scale",  "shape",      "c",          "k",
      "mean",   "stddev",   "samples_file", "mode",     "mu_sigma",
      "w_sigma", "gamma",   "alpha",      "max_rounds", "tolerance",
      "max_shade", "output_dir"};
  return keys;
}

double GetReal(const json& doc, const char* key, double fallback) {
  if (!doc.contains(key)) return fallback;
  const json& v = doc.at(key);
  if (!v.is_number()) {
    throw ConfigError(std::string("'") + key + "' must be a number");
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) {
    throw ConfigError(std::string("'") + key + "' must be finite");
  }
  return x;
}

int GetInt(const json& doc, const char* key, int fallback) {
  if (!doc.contains(key)) return fallback;
  const json& v = doc.at(key);
  if (!v.is_number_integer()) {
    throw ConfigError(std::string("'") + key + "' must be an integer");
  }
  return v.get<int>();
}

std::string GetString(const json& doc, const char* key,
                      const std::string& fallback) {
  if (!doc.contains(key)) return fallback;
  const json& v = doc.at(key);
  if (!v.is_string()) {
    throw ConfigError(std::string("'") + key + "' must be a string");
  }
  return v.get<std::string>();
}

std::string FamilyName(const ExperimentConfig& config) {
  if (!config.samples_file.empty()) return "empirical";
  return std::visit(
      [](const auto& fam) -> std::string {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, Gpd>) return "gpd";
        if constexpr (std::is_same_v<T, BurrXII>) return "burr";
        if constexpr (std::is_same_v<T, TruncatedNormal>) return "normal";
        if constexpr (std::is_same_v<T, Uniform>) return "uniform";
        return "tabulated";
      },
      config.distribution.family);
}

std::string Real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Grid ExperimentConfig::MakeGrid() const {
  return Grid(lower, upper, bins, subsamples);
}

ExperimentConfig ParseConfig(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& item : doc.items()) {
    if (!KnownKeys().count(item.key())) {
      throw ConfigError("unknown config key '" + item.key() + "'");
    }
  }
  ExperimentConfig config;
  config.lower = GetReal(doc, "lower", config.lower);
  config.upper = GetReal(doc, "upper", config.upper);
  config.bins = GetInt(doc, "bins", config.bins);
  config.subsamples = GetInt(doc, "subsamples", config.subsamples);
  Grid grid = [&] {
    try {
      return config.MakeGrid();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }();

  const std::string family = GetString(doc, "family", "gpd");
  Family fam;
  if (family == "gpd") {
    fam = Gpd{GetReal(doc, "location", 0.0), GetReal(doc, "scale", 1.0),
              GetReal(doc, "shape", 1.0)};
  } else if (family == "burr") {
    fam = BurrXII{GetReal(doc, "c", 2.0), GetReal(doc, "k", 1.0),
                  GetReal(doc, "scale", 1.0)};
  } else if (family == "normal") {
    fam = TruncatedNormal{GetReal(doc, "mean", 0.5 * (config.lower + config.upper)),
                          GetReal(doc, "stddev", 1.0)};
  } else if (family == "uniform") {
    fam = Uniform{};
  } else if (family == "empirical") {
    config.samples_file = GetString(doc, "samples_file", "");
    if (config.samples_file.empty()) {
      throw ConfigError("family 'empirical' needs 'samples_file'");
    }
  } else {
    throw ConfigError("unknown family '" + family + "'");
  }
  if (family != "empirical" && doc.contains("samples_file")) {
    throw ConfigError("'samples_file' only applies to family 'empirical'");
  }

  try {
    if (family == "empirical") {
      std::vector<double> samples;
      try {
        samples = ReadSamplesFile(config.samples_file);
      } catch (const std::exception& e) {
        throw ConfigError(e.what());
      }
      config.distribution = FitEmpirical(samples, grid).spec;
    } else {
      config.distribution = DistributionSpec{fam, config.lower, config.upper};
    }
    Distribution probe(config.distribution);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  EquilibriumConfig& eq = config.equilibrium;
  const std::string mode = GetString(doc, "mode", "ex-ante");
  if (mode == "ex-ante") {
    eq.mode = Mode::kExAnte;
    if (doc.contains("mu_sigma") || doc.contains("w_sigma")) {
      throw ConfigError("mu_sigma and w_sigma only apply to blinded mode");
    }
  } else if (mode == "blinded") {
    eq.mode = Mode::kBlinded;
    if (!doc.contains("mu_sigma")) {
      throw ConfigError("blinded mode needs 'mu_sigma'");
    }
    eq.mu_sigma = GetReal(doc, "mu_sigma", 0.0);
    eq.w_sigma = GetReal(doc, "w_sigma", eq.mu_sigma);
  } else {
    throw ConfigError("mode must be 'ex-ante' or 'blinded'");
  }
  eq.gamma = GetReal(doc, "gamma", eq.gamma);
  eq.alpha = GetReal(doc, "alpha", eq.alpha);
  eq.max_rounds = GetInt(doc, "max_rounds", eq.max_rounds);
  eq.tolerance = GetReal(doc, "tolerance", eq.tolerance);
  if (doc.contains("max_shade")) eq.max_shade = GetReal(doc, "max_shade", 0.0);
  try {
    eq.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  config.output_dir = GetString(doc, "output_dir", config.output_dir);
  if (config.output_dir.empty()) throw ConfigError("'output_dir' is empty");
  return config;
}

ExperimentConfig LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return ParseConfig(doc);
}

ordered_json ResolvedConfigJson(const ExperimentConfig& config) {
  ordered_json out;
  out["lower"] = config.lower;
  out["upper"] = config.upper;
  out["bins"] = config.bins;
  out["subsamples"] = config.subsamples;
  out["family"] = FamilyName(config);
  std::visit(
      [&](const auto& fam) {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, Gpd>) {
          out["location"] = fam.location;
          out["scale"] = fam.scale;
          out["shape"] = fam.shape;
        } else if constexpr (std::is_same_v<T, BurrXII>) {
          out["c"] = fam.c;
          out["k"] = fam.k;
          out["scale"] = fam.scale;
        } else if constexpr (std::is_same_v<T, TruncatedNormal>) {
          out["mean"] = fam.mean;
          out["stddev"] = fam.stddev;
        }
      },
      config.distribution.family);
  if (!config.samples_file.empty()) out["samples_file"] = config.samples_file;
  const EquilibriumConfig& eq = config.equilibrium;
  out["mode"] = ToString(eq.mode);
  if (eq.mode == Mode::kBlinded) {
    out["mu_sigma"] = eq.mu_sigma;
    out["w_sigma"] = eq.w_sigma;
  }
  out["gamma"] = eq.gamma;
  out["alpha"] = eq.alpha;
  out["max_rounds"] = eq.max_rounds;
  out["tolerance"] = eq.tolerance;
  out["max_shade"] = eq.ResolvedMaxShade(config.MakeGrid());
  out["output_dir"] = config.output_dir;
  return out;
}

ExperimentConfig MakePreset(const std::string& name, const json& overrides) {
  json doc;
  if (name == "exante-pareto") {
    doc = {{"family", "gpd"}, {"shape", 1.0}};
  } else if (name == "exante-gamma") {
    doc = {{"family", "gpd"}, {"shape", 1.0}, {"gamma", 0.5}};
  } else if (name == "exante-burr") {
    doc = {{"family", "burr"}, {"c", 2.0}, {"k", 1.0}, {"scale", 1.0}};
  } else if (name == "blinded-pareto") {
    doc = {{"family", "gpd"}, {"shape", 1.0}, {"mode", "blinded"},
           {"mu_sigma", 5.0}};
  } else {
    throw ConfigError("unknown preset '" + name + "' (see list-presets)");
  }
  doc["output_dir"] = "out/" + name;
  if (!overrides.is_null()) {
    if (!overrides.is_object()) throw ConfigError("overrides must be an object");
    doc.update(overrides);
  }
  return ParseConfig(doc);
}

std::string ListPresets() {
  return
      "exante-pareto --shape {-0.1,0.01,1}\n"
      "    ex-ante equilibrium, f = GPD(0, 1, shape) on [0, 10]. Default\n"
      "    shape 1.\n"
      "exante-gamma --gamma {0.25,0.5,0.75}\n"
      "    ex-ante budget sweep on GPD(0, 1, 1). Default gamma 0.5.\n"
      "exante-burr --c 2 --k 1\n"
      "    ex-ante equilibrium, f = Burr XII(c, k) with unit scale. The\n"
      "    rule has an interior zero band.\n"
      "blinded-pareto --sigma {2,5,10,1000}\n"
      "    blinded equilibrium on GPD(0, 1, 1), mu ~ Normal(0, sigma) and\n"
      "    w_sigma = sigma unless --w-sigma is given. Default sigma 5.\n"
      "Every preset also accepts --gamma --alpha --max-rounds --tolerance\n"
      "--max-shade --bins --subsamples --upper --output-dir.\n";
}

ExperimentResult RunExperiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const Grid grid = config.MakeGrid();
  const Distribution f(config.distribution);
  const EquilibriumConfig& eq = config.equilibrium;

  ExperimentResult result{FindEquilibrium(f, eq, grid)};
  const EquilibriumTrace& trace = result.trace;
  const double cap = trace.max_shade;
  const bool blinded = eq.mode == Mode::kBlinded;
  const double inf = std::numeric_limits<double>::infinity();
  if (blinded) {
    result.deviation_incentive =
        BlindedRegretDI(trace.final_rule, f, eq.mu_sigma, cap);
    result.deviation_incentive_unbounded =
        BlindedRegretDI(trace.final_rule, f, eq.mu_sigma, inf);
  } else {
    result.deviation_incentive = ExAnteDI(trace.final_rule, f, cap);
    result.deviation_incentive_unbounded = ExAnteDI(trace.final_rule, f, inf);
  }
  result.regret_at_truth = RegretAtTruth(trace.final_rule, f);

  ordered_json& s = result.summary;
  s["converged"] = trace.converged;
  s["rounds"] = trace.rounds.size();
  s["config"] = ResolvedConfigJson(config);
  s["k_vcg"] = trace.budget.k_vcg();
  s["k"] = trace.budget.k();
  s["max_shade"] = cap;
  // Whether the last best response sits on the shade cap.
  bool binding = false;
  if (trace.final_strategy.is_constant()) {
    const double response = trace.rounds.back().strategy.constant();
    binding = std::abs(response - cap) <= 1e-9 * std::max(1.0, cap);
    s["shade"] = trace.final_strategy.constant();
    s["best_response_shade"] = response;
  } else {
    s["shade_nodes"] = trace.final_strategy.table().values();
    for (double v : trace.rounds.back().strategy.table().values()) {
      binding = binding || std::abs(v - cap) <= 1e-9 * std::max(1.0, cap);
    }
  }
  s["max_shade_binding"] = binding;
  s["deviation_incentive"] = result.deviation_incentive;
  s["deviation_incentive_unbounded"] = result.deviation_incentive_unbounded;
  s["regret_at_truth"] = result.regret_at_truth;
  s["budget_collected"] = trace.rounds.back().collected;
  s["rule_interior_bins"] = trace.final_rule.InteriorBins();

  result.runtime_seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
  return result;
}

void WriteSurfaceCsv(const std::string& path, const PaymentRule& rule) {
  const Grid& grid = rule.grid();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "psi,shade,value\n";
  for (int b = 0; b < grid.bins(); ++b) {
    const double psi = grid.Midpoint(b);
    for (int j = 0; j <= grid.bins(); ++j) {
      const double shade = j * grid.width();
      const double value = psi >= shade ? rule(psi - shade) : psi;
      out << Real(psi) << ',' << Real(shade) << ',' << Real(value) << '\n';
    }
  }
}

void WriteArtifacts(const ExperimentConfig& config,
                    const ExperimentResult& result) {
  namespace fs = std::filesystem;
  const fs::path dir(config.output_dir);
  fs::create_directories(dir);
  const Grid grid = config.MakeGrid();
  const Distribution f(config.distribution);
  const EquilibriumTrace& trace = result.trace;

  WriteCsvFile((dir / "rule.csv").string(), trace.final_rule.tab(), "psi",
               "payment_above_critical");
  const Tabulated shade = trace.final_strategy.OnGrid(grid);
  WriteCsvFile((dir / "strategy.csv").string(), shade, "psi", "shade");

  // Indexed by the rule node a report lands on: mass arriving there from
  // true profit psi + s against mass paying at psi.
  const std::vector<double> ratio =
      PdfRatios(f, trace.final_strategy, grid);
  WriteCsvFile((dir / "ratio.csv").string(),
               Tabulated(grid, ratio, TabulatedKind::kRule), "psi", "ratio");
  WriteSurfaceCsv((dir / "surface.csv").string(), trace.final_rule);

  {
    std::ofstream out(dir / "summary.json", std::ios::binary);
    out << result.summary.dump(2) << '\n';
  }
  {
    std::ofstream out(dir / "trace.txt", std::ios::binary);
    out << TraceReport(trace, config.equilibrium)
        << "deviation_incentive: " << Real(result.deviation_incentive) << '\n';
  }
  {
    std::ofstream out(dir / "timing.json", std::ios::binary);
    ordered_json t;
    t["runtime_seconds"] = result.runtime_seconds;
    out << t.dump(2) << '\n';
  }
}

}  // namespace payrule
