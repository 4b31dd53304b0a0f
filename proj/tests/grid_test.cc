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

#include "payrule/grid.h"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "payrule/distributions.h"

namespace payrule {
namespace {

TEST(GridTest, PaperDiscretization) {
  const Grid grid(0.0, 10.0, 50, 200);
  EXPECT_DOUBLE_EQ(grid.width(), 0.2);
  EXPECT_DOUBLE_EQ(grid.Midpoint(0), 0.1);
  EXPECT_DOUBLE_EQ(grid.UpperEdge(49), 10.0);
  EXPECT_EQ(grid.num_nodes(), 10000);
}

TEST(GridTest, TwoBins) {
  const Grid grid(0.0, 1.0, 2, 1);
  EXPECT_DOUBLE_EQ(grid.LowerEdge(0), 0.0);
  EXPECT_DOUBLE_EQ(grid.LowerEdge(1), 0.5);
  EXPECT_DOUBLE_EQ(grid.UpperEdge(1), 1.0);
  EXPECT_EQ(grid.Midpoints(), (std::vector<double>{0.25, 0.75}));
}

TEST(GridTest, RejectsBadArguments) {
  EXPECT_THROW(Grid(0.0, 0.0, 10, 10), std::invalid_argument);
  EXPECT_THROW(Grid(1.0, 0.0, 10, 10), std::invalid_argument);
  EXPECT_THROW(Grid(0.0, 1.0, 1, 10), std::invalid_argument);
  EXPECT_THROW(Grid(0.0, 1.0, 10, 0), std::invalid_argument);
  EXPECT_THROW(Grid(0.0, INFINITY, 10, 10), std::invalid_argument);
}

TEST(GridTest, BinOfClamps) {
  const Grid grid(0.0, 10.0, 50, 1);
  EXPECT_EQ(grid.BinOf(-3.0), 0);
  EXPECT_EQ(grid.BinOf(0.25), 1);
  EXPECT_EQ(grid.BinOf(10.0), 49);
  EXPECT_EQ(grid.BinOf(12.0), 49);
}

TEST(IntegrateTest, Constant) {
  const Grid grid(0.0, 10.0, 50, 200);
  EXPECT_NEAR(Integrate([](double) { return 1.0; }, grid), 10.0, 1e-12);
}

TEST(IntegrateTest, Identity) {
  const Grid grid(0.0, 10.0, 50, 200);
  EXPECT_NEAR(Integrate([](double x) { return x; }, grid), 50.0, 1e-6);
}

TEST(IntegrateTest, TruncatedGpdPdfAgainstCdf) {
  const Grid grid(0.0, 10.0, 50, 200);
  const Distribution f({Gpd{0.0, 1.0, 1.0}, 0.0, 10.0});
  // Closed form of the parent cdf: 1 - (1 + x)^-1.
  const double mass = (1.0 - 1.0 / 11.0);
  const double integral =
      Integrate([&](double x) { return f.ParentPdf(x); }, grid);
  EXPECT_NEAR(integral / mass, 1.0, 1e-6);
  EXPECT_NEAR(Integrate([&](double x) { return f.Pdf(x); }, grid), 1.0, 1e-6);
}

TEST(IntegrateTest, PartialCells) {
  const Grid grid(0.0, 10.0, 50, 200);
  EXPECT_NEAR(Integrate([](double) { return 1.0; }, grid, 0.123, 7.777),
              7.654, 1e-12);
  EXPECT_NEAR(Integrate([](double x) { return x; }, grid, 1.0, 3.0), 4.0,
              1e-9);
  EXPECT_THROW(Integrate([](double) { return 1.0; }, grid, -1.0, 2.0),
               std::invalid_argument);
  EXPECT_THROW(Integrate([](double) { return 1.0; }, grid, 3.0, 2.0),
               std::invalid_argument);
}

TEST(TabulatedTest, InterpolatesSegmentMidpoint) {
  const Grid grid(0.0, 0.4, 2, 1);
  const Tabulated tab(grid, {0.0, 2.0}, TabulatedKind::kRule);
  EXPECT_DOUBLE_EQ(tab(0.2), 1.0);
}

TEST(TabulatedTest, ExactAtNodes) {
  const Grid grid(0.0, 10.0, 50, 1);
  std::vector<double> values(50);
  for (int b = 0; b < 50; ++b) values[b] = std::sin(b) + 2.0;
  const Tabulated tab(grid, values, TabulatedKind::kRule);
  for (int b = 0; b < 50; ++b) EXPECT_EQ(tab(grid.Midpoint(b)), values[b]);
}

TEST(TabulatedTest, BoundaryPolicy) {
  const Grid grid(0.0, 10.0, 50, 1);
  std::vector<double> values(50);
  for (int b = 0; b < 50; ++b) values[b] = b + 1.0;
  const Tabulated rule(grid, values, TabulatedKind::kRule);
  EXPECT_EQ(rule(11.0), 50.0);
  EXPECT_EQ(rule(-1.0), 1.0);
  EXPECT_EQ(rule(9.95), 50.0);
  EXPECT_EQ(rule(0.05), 1.0);
  const Tabulated density(grid, values, TabulatedKind::kDensity);
  EXPECT_EQ(density(11.0), 0.0);
  EXPECT_EQ(density(-0.01), 0.0);
  EXPECT_EQ(density(10.0), 50.0);
}

TEST(TabulatedTest, Validation) {
  const Grid grid(0.0, 1.0, 2, 1);
  EXPECT_THROW(Tabulated(grid, {1.0}, TabulatedKind::kRule),
               std::invalid_argument);
  EXPECT_THROW(Tabulated(grid, {1.0, NAN}, TabulatedKind::kRule),
               std::invalid_argument);
  EXPECT_THROW(Tabulated(grid, {1.0, -1.0}, TabulatedKind::kDensity),
               std::invalid_argument);
  EXPECT_NO_THROW(Tabulated(grid, {1.0, -1.0}, TabulatedKind::kRule));
}

TEST(TabulatedTest, NormalizedIntegratesToOne) {
  const Grid grid(0.0, 10.0, 50, 200);
  const Tabulated tab = Tabulated::FromFunction(
      grid, [](double x) { return 1.0 + x * x; }, TabulatedKind::kDensity);
  double mass = 0.0;
  for (double m : tab.Normalized().BinIntegrals()) mass += m;
  EXPECT_NEAR(mass, 1.0, 1e-12);
  EXPECT_THROW(Tabulated::Constant(grid, 0.0, TabulatedKind::kDensity)
                   .Normalized(),
               std::domain_error);
}

TEST(TabulatedTest, OnNodesMatchesInterpolant) {
  const Grid grid(0.0, 10.0, 5, 7);
  const Tabulated tab(grid, {1, 3, 2, 5, 4}, TabulatedKind::kStrategy);
  const NodeValues nodes = tab.OnNodes();
  ASSERT_EQ(nodes.values.size(), 35u);
  for (int i = 0; i < grid.num_nodes(); ++i) {
    EXPECT_DOUBLE_EQ(nodes.values[i], tab(grid.Node(i)));
  }
}

TEST(CsvTest, RoundTripIsExact) {
  const Grid grid(0.0, 10.0, 50, 1);
  const Tabulated tab = Tabulated::FromFunction(
      grid, [](double x) { return std::exp(-x) / 3.0; }, TabulatedKind::kRule);
  std::stringstream io;
  WriteCsv(io, tab, "psi", "r");
  EXPECT_EQ(io.str().substr(0, 6), "psi,r\n");
  const Tabulated back = ReadCsv(io, grid, TabulatedKind::kRule);
  EXPECT_EQ(back.values(), tab.values());
}

TEST(CsvTest, RejectsMismatchedGrid) {
  const Grid grid(0.0, 10.0, 50, 1);
  std::stringstream io;
  WriteCsv(io, Tabulated::Constant(grid, 1.0, TabulatedKind::kRule), "x", "y");
  std::stringstream copy(io.str());
  EXPECT_THROW(ReadCsv(io, Grid(0.0, 10.0, 25, 1), TabulatedKind::kRule),
               std::runtime_error);
  EXPECT_THROW(ReadCsv(copy, Grid(0.0, 5.0, 50, 1), TabulatedKind::kRule),
               std::runtime_error);
  std::stringstream bad("x,y\n0.1,abc\n");
  EXPECT_THROW(ReadCsv(bad, grid, TabulatedKind::kRule), std::runtime_error);
}

TEST(SupDistanceTest, Basic) {
  EXPECT_EQ(SupDistance(std::vector<double>{1, 2, 3},
                        std::vector<double>{1, 4, 2.5}),
            2.0);
  EXPECT_THROW(SupDistance(std::vector<double>{1}, std::vector<double>{}),
               std::invalid_argument);
}

}  // namespace
}  // namespace payrule
