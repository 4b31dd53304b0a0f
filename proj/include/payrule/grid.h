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

// Discretization of the potential-profit axis psi in [lower, upper].
//
// The axis is split into `bins` equal-width bins. Tabulated functions carry
// one value per bin midpoint and are evaluated by linear interpolation.
// Integrals use the midpoint rule with `subsamples` cells per bin.

#ifndef PAYRULE_GRID_H_
#define PAYRULE_GRID_H_

#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace payrule {

class Grid {
 public:
  // Throws std::invalid_argument on non-finite or inverted bounds, bins < 2
  // or subsamples < 1.
  Grid(double lower, double upper, int bins, int subsamples);

  double lower() const { return lower_; }
  double upper() const { return upper_; }
  int bins() const { return bins_; }
  int subsamples() const { return subsamples_; }
  double width() const { return width_; }

  // Zero-based bin index b in [0, bins).
  double LowerEdge(int b) const { return lower_ + b * width_; }
  double Midpoint(int b) const { return lower_ + (b + 0.5) * width_; }
  double UpperEdge(int b) const {
    return b + 1 == bins_ ? upper_ : lower_ + (b + 1) * width_;
  }
  std::vector<double> Midpoints() const;

  // Bin containing x, clamped to [0, bins).
  int BinOf(double x) const;

  // Midpoint-rule nodes: subsamples() per bin, bins() * subsamples() total.
  int num_nodes() const { return bins_ * subsamples_; }
  double node_step() const { return width_ / subsamples_; }
  double Node(int i) const { return lower_ + (i + 0.5) * node_step(); }
  std::vector<double> Nodes() const;

  bool operator==(const Grid& other) const = default;

 private:
  double lower_;
  double upper_;
  int bins_;
  int subsamples_;
  double width_;
};

Grid MakeGrid(double lower, double upper, int bins, int subsamples);

// Midpoint-rule integral of fn over [from, to] using the grid's quadrature
// cells. Cells cut by the interval ends are shrunk to the overlap and sampled
// at the overlap's midpoint. Throws std::invalid_argument unless
// lower <= from <= to <= upper.
double Integrate(const std::function<double(double)>& fn, const Grid& grid,
                 double from, double to);
double Integrate(const std::function<double(double)>& fn, const Grid& grid);

// A function sampled at the grid's quadrature nodes, weights included:
// Integral(values) == sum(values) * node_step().
struct NodeValues {
  std::vector<double> values;
};

enum class TabulatedKind { kDensity, kRule, kStrategy };

const char* ToString(TabulatedKind kind);

// One value per bin midpoint, linearly interpolated in between. Between the
// outermost midpoints and the grid edges the nearest node value is held.
// Outside [lower, upper] densities vanish while rules and strategies keep
// the nearest node value.
class Tabulated {
 public:
  Tabulated(Grid grid, std::vector<double> values, TabulatedKind kind);

  static Tabulated Constant(const Grid& grid, double value, TabulatedKind kind);
  static Tabulated FromFunction(const Grid& grid,
                                const std::function<double(double)>& fn,
                                TabulatedKind kind);

  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  TabulatedKind kind() const { return kind_; }
  double operator[](int b) const { return values_[b]; }

  // Interpolation in the grid interior, without the density cut-off.
  double Interior(double x) const;
  double operator()(double x) const;

  // Samples the interpolant at every quadrature node.
  NodeValues OnNodes() const;
  // Integral of the interpolant over each bin.
  std::vector<double> BinIntegrals() const;

  // Densities only: scales values so the interpolant integrates to one.
  // Throws std::domain_error when the total mass is not positive.
  Tabulated Normalized() const;

 private:
  Grid grid_;
  std::vector<double> values_;
  TabulatedKind kind_;
};

double Interp(const Tabulated& tab, double x);

// CSV with header `<x_name>,<value_name>`, one row per node.
void WriteCsv(std::ostream& out, const Tabulated& tab,
              const std::string& x_name, const std::string& value_name);
void WriteCsvFile(const std::string& path, const Tabulated& tab,
                  const std::string& x_name, const std::string& value_name);

// Reads a two-column CSV written by WriteCsv. The x column must match the
// grid midpoints to 1e-9. Throws std::runtime_error on malformed input.
Tabulated ReadCsv(std::istream& in, const Grid& grid, TabulatedKind kind);
Tabulated ReadCsvFile(const std::string& path, const Grid& grid,
                      TabulatedKind kind);

// Sup-norm distance between equal-length vectors.
double SupDistance(std::span<const double> a, std::span<const double> b);

}  // namespace payrule

#endif  // PAYRULE_GRID_H_
