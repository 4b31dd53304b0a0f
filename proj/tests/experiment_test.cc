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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "payrule/center.h"

namespace payrule {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

fs::path Scratch(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / ("payrule_" + name);
  fs::remove_all(dir);
  return dir;
}

TEST(ParseConfigTest, Defaults) {
  const ExperimentConfig config = ParseConfig(json::object());
  EXPECT_EQ(config.upper, 10.0);
  EXPECT_EQ(config.bins, 50);
  EXPECT_EQ(config.subsamples, 200);
  EXPECT_EQ(config.equilibrium.max_rounds, 50);
  EXPECT_EQ(config.equilibrium.gamma, 0.5);
  EXPECT_EQ(config.equilibrium.mode, Mode::kExAnte);
  const json resolved = ResolvedConfigJson(config);
  EXPECT_EQ(resolved["family"], "gpd");
  EXPECT_EQ(resolved["shape"], 1.0);
  EXPECT_EQ(resolved["gamma"], 0.5);
  EXPECT_EQ(resolved["max_shade"], 0.2);
}

TEST(ParseConfigTest, BlindedDefaultsWSigma) {
  const ExperimentConfig config =
      ParseConfig(json{{"mode", "blinded"}, {"mu_sigma", 2.0}});
  EXPECT_EQ(config.equilibrium.w_sigma, 2.0);
  const ExperimentConfig both = ParseConfig(
      json{{"mode", "blinded"}, {"mu_sigma", 2.0}, {"w_sigma", 7.0}});
  EXPECT_EQ(both.equilibrium.w_sigma, 7.0);
}

TEST(ParseConfigTest, Families) {
  EXPECT_TRUE(std::holds_alternative<BurrXII>(
      ParseConfig(json{{"family", "burr"}, {"c", 2}, {"k", 1}})
          .distribution.family));
  EXPECT_TRUE(std::holds_alternative<TruncatedNormal>(
      ParseConfig(json{{"family", "normal"}, {"mean", 4}, {"stddev", 1}})
          .distribution.family));
  EXPECT_TRUE(std::holds_alternative<Uniform>(
      ParseConfig(json{{"family", "uniform"}}).distribution.family));
}

TEST(ParseConfigTest, EmpiricalFromFile) {
  const fs::path dir = Scratch("empirical");
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "s.txt");
    out << "# draws\n1.0\n2.0\n2.1\n";
  }
  const ExperimentConfig config = ParseConfig(
      json{{"family", "empirical"}, {"samples_file", (dir / "s.txt").string()}});
  EXPECT_TRUE(std::holds_alternative<Histogram>(config.distribution.family));
  EXPECT_EQ(ResolvedConfigJson(config)["family"], "empirical");
  EXPECT_THROW(ParseConfig(json{{"family", "empirical"},
                                {"samples_file", (dir / "none").string()}}),
               ConfigError);
}

TEST(ParseConfigTest, Errors) {
  EXPECT_THROW(ParseConfig(json::array()), ConfigError);
  EXPECT_THROW(ParseConfig(json{{"gama", 0.5}}), ConfigError);
  EXPECT_THROW(ParseConfig(json{{"gamma", "half"}}), ConfigError);
  EXPECT_THROW(ParseConfig(json{{"gamma", 1.5}}), ConfigError);
  EXPECT_THROW(ParseConfig(json{{"bins", 2.5}}), ConfigError);
  EXPECT_THROW(ParseConfig(json{{"bins", 1}}), ConfigError);
  EXPECT_THROW(ParseConfig(json{{"family", "cauchy"}}), ConfigError);
  EXPECT_THROW(ParseConfig(json{{"scale", -1.0}}), ConfigError);
  EXPECT_THROW(ParseConfig(json{{"mode", "blinded"}}), ConfigError);
  EXPECT_THROW(ParseConfig(json{{"mu_sigma", 2.0}}), ConfigError);
  EXPECT_THROW(ParseConfig(json{{"mode", "oracle"}}), ConfigError);
  EXPECT_THROW(ParseConfig(json{{"samples_file", "x"}}), ConfigError);
  EXPECT_THROW(ParseConfig(json{{"alpha", 0.0}}), ConfigError);
  EXPECT_THROW(LoadConfigFile("/nonexistent/config.json"), ConfigError);
}

TEST(PresetTest, Templates) {
  const ExperimentConfig pareto =
      MakePreset("exante-pareto", json{{"shape", -0.1}});
  EXPECT_EQ(std::get<Gpd>(pareto.distribution.family).shape, -0.1);
  EXPECT_EQ(pareto.output_dir, "out/exante-pareto");
  const ExperimentConfig gamma =
      MakePreset("exante-gamma", json{{"gamma", 0.25}});
  EXPECT_EQ(gamma.equilibrium.gamma, 0.25);
  const ExperimentConfig burr = MakePreset("exante-burr", json::object());
  EXPECT_EQ(std::get<BurrXII>(burr.distribution.family).c, 2.0);
  const ExperimentConfig blinded =
      MakePreset("blinded-pareto", json{{"mu_sigma", 10.0}});
  EXPECT_EQ(blinded.equilibrium.mode, Mode::kBlinded);
  EXPECT_EQ(blinded.equilibrium.w_sigma, 10.0);
  EXPECT_THROW(MakePreset("exante-cauchy", json::object()), ConfigError);
}

TEST(PresetTest, Listing) {
  const std::string text = ListPresets();
  EXPECT_FALSE(text.empty());
  EXPECT_NE(text.find("blinded-pareto --sigma {2,5,10,1000}"),
            std::string::npos);
  EXPECT_NE(text.find("exante-pareto --shape {-0.1,0.01,1}"),
            std::string::npos);
  EXPECT_NE(text.find("exante-gamma"), std::string::npos);
  EXPECT_NE(text.find("exante-burr"), std::string::npos);
}

TEST(RunExperimentTest, ParetoShadeAndArtifacts) {
  ExperimentConfig config = MakePreset("exante-pareto", json::object());
  config.output_dir = Scratch("pareto").string();
  const ExperimentResult result = RunExperiment(config);
  WriteArtifacts(config, result);
  EXPECT_TRUE(result.summary["converged"].get<bool>());
  EXPECT_NEAR(result.summary["shade"].get<double>(), 0.2, 0.05);
  EXPECT_EQ(result.summary["config"]["gamma"], 0.5);
  for (const char* name : {"rule.csv", "strategy.csv", "ratio.csv",
                           "surface.csv", "summary.json", "trace.txt",
                           "timing.json"}) {
    EXPECT_TRUE(fs::exists(fs::path(config.output_dir) / name)) << name;
  }
  const std::string rule = Slurp(fs::path(config.output_dir) / "rule.csv");
  EXPECT_EQ(rule.substr(0, rule.find('\n')), "psi,payment_above_critical");
  const json summary =
      json::parse(Slurp(fs::path(config.output_dir) / "summary.json"));
  EXPECT_FALSE(summary.contains("runtime_seconds"));
  EXPECT_TRUE(json::parse(Slurp(fs::path(config.output_dir) / "timing.json"))
                  .contains("runtime_seconds"));
}

TEST(RunExperimentTest, ByteIdenticalOutputs) {
  ExperimentConfig config = MakePreset("exante-burr", json::object());
  const fs::path a = Scratch("det_a");
  const fs::path b = Scratch("det_b");
  config.output_dir = a.string();
  WriteArtifacts(config, RunExperiment(config));
  config.output_dir = b.string();
  WriteArtifacts(config, RunExperiment(config));
  for (const char* name : {"rule.csv", "strategy.csv", "ratio.csv",
                           "surface.csv", "trace.txt"}) {
    EXPECT_EQ(Slurp(a / name), Slurp(b / name)) << name;
  }
  // summary.json embeds output_dir; everything else must match.
  json sa = json::parse(Slurp(a / "summary.json"));
  json sb = json::parse(Slurp(b / "summary.json"));
  sa["config"].erase("output_dir");
  sb["config"].erase("output_dir");
  EXPECT_EQ(sa.dump(), sb.dump());
}

TEST(SurfaceTest, PaymentAndLossRegions) {
  const Grid grid(0.0, 10.0, 50, 1);
  const PaymentRule rule = PaymentRule::FullCharge(grid);
  const fs::path dir = Scratch("surface");
  fs::create_directories(dir);
  WriteSurfaceCsv((dir / "surface.csv").string(), rule);
  std::istringstream in(Slurp(dir / "surface.csv"));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "psi,shade,value");
  int rows = 0;
  while (std::getline(in, line)) {
    double psi, shade, value;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf", &psi, &shade, &value),
              3);
    if (psi < shade) {
      EXPECT_EQ(value, psi);
    } else {
      EXPECT_DOUBLE_EQ(value, rule(psi - shade));
    }
    ++rows;
  }
  EXPECT_EQ(rows, 50 * 51);
}

#ifdef PAYRULE_CLI
int RunCli(const std::string& args) {
  const std::string cmd =
      std::string(PAYRULE_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(CliTest, ExitCodes) {
  const fs::path dir = Scratch("cli");
  fs::create_directories(dir);
  EXPECT_EQ(RunCli("list-presets"), 0);
  EXPECT_EQ(RunCli("preset nonexistent"), 1);
  EXPECT_EQ(RunCli("solve --config /nonexistent.json"), 1);
  EXPECT_EQ(RunCli("bogus"), 1);
  {
    std::ofstream out(dir / "bad.json");
    out << "{\"gamma\": 2}";
  }
  EXPECT_EQ(RunCli("solve --config " + (dir / "bad.json").string()), 1);
  {
    std::ofstream out(dir / "infeasible.json");
    out << "{\"gamma\": 1, \"max_shade\": 2, \"output_dir\": \""
        << (dir / "inf").string() << "\"}";
  }
  EXPECT_EQ(RunCli("solve --config " + (dir / "infeasible.json").string()),
            2);
  {
    std::ofstream out(dir / "short.json");
    out << "{\"max_rounds\": 2, \"output_dir\": \"" << (dir / "short").string()
        << "\"}";
  }
  EXPECT_EQ(RunCli("solve --config " + (dir / "short.json").string()), 3);
  EXPECT_TRUE(fs::exists(dir / "short" / "rule.csv"));
  {
    std::ofstream out(dir / "ok.json");
    out << "{\"output_dir\": \"" << (dir / "ok").string() << "\"}";
  }
  EXPECT_EQ(RunCli("solve --config " + (dir / "ok.json").string()), 0);
  EXPECT_EQ(RunCli("diagnose --rule " + (dir / "ok" / "rule.csv").string() +
                   " --config " + (dir / "ok.json").string()),
            0);
  EXPECT_EQ(RunCli("diagnose --rule /nonexistent.csv --config " +
                   (dir / "ok.json").string()),
            1);
  EXPECT_EQ(RunCli("preset exante-pareto --shape 0.01 --output-dir " +
                   (dir / "preset").string()),
            0);
}
#endif

}  // namespace
}  // namespace payrule
