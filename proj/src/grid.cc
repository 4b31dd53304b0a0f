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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace payrule {

Grid::Grid(double lower, double upper, int bins, int subsamples)
    : lower_(lower), upper_(upper), bins_(bins), subsamples_(subsamples) {
  if (!std::isfinite(lower) || !std::isfinite(upper)) {
    throw std::invalid_argument("grid bounds must be finite");
  }
  if (!(lower < upper)) {
    throw std::invalid_argument("grid requires lower < upper");
  }
  if (bins < 2) throw std::invalid_argument("grid requires at least 2 bins");
  if (subsamples < 1) {
    throw std::invalid_argument("grid requires at least 1 subsample per bin");
  }
  width_ = (upper - lower) / bins;
}

std::vector<double> Grid::Midpoints() const {
  std::vector<double> mids(bins_);
  for (int b = 0; b < bins_; ++b) mids[b] = Midpoint(b);
  return mids;
}

int Grid::BinOf(double x) const {
  const int b = static_cast<int>(std::floor((x - lower_) / width_));
  return std::clamp(b, 0, bins_ - 1);
}

std::vector<double> Grid::Nodes() const {
  std::vector<double> nodes(num_nodes());
  for (int i = 0; i < num_nodes(); ++i) nodes[i] = Node(i);
  return nodes;
}

Grid MakeGrid(double lower, double upper, int bins, int subsamples) {
  return Grid(lower, upper, bins, subsamples);
}

double Integrate(const std::function<double(double)>& fn, const Grid& grid,
                 double from, double to) {
  const double slack = 1e-12 * (std::abs(grid.lower()) + std::abs(grid.upper()));
  if (!(from >= grid.lower() - slack && to <= grid.upper() + slack &&
        from <= to)) {
    throw std::invalid_argument("integration range outside the grid");
  }
  from = std::max(from, grid.lower());
  to = std::min(to, grid.upper());
  const double h = grid.node_step();
  const int n = grid.num_nodes();
  const int first = std::clamp(
      static_cast<int>(std::floor((from - grid.lower()) / h)), 0, n - 1);
  const int last = std::clamp(
      static_cast<int>(std::ceil((to - grid.lower()) / h)) - 1, 0, n - 1);
  double sum = 0.0;
  for (int i = first; i <= last; ++i) {
    const double a = grid.lower() + i * h;
    const double b = a + h;
    if (a >= from && b <= to) {
      sum += fn(grid.Node(i)) * h;
      continue;
    }
    const double lo = std::max(a, from);
    const double hi = std::min(b, to);
    if (hi > lo) sum += fn(0.5 * (lo + hi)) * (hi - lo);
  }
  return sum;
}

double Integrate(const std::function<double(double)>& fn, const Grid& grid) {
  return Integrate(fn, grid, grid.lower(), grid.upper());
}

const char* ToString(TabulatedKind kind) {
  switch (kind) {
    case TabulatedKind::kDensity:
      return "density";
    case TabulatedKind::kRule:
      return "rule";
    case TabulatedKind::kStrategy:
      return "strategy";
  }
  return "unknown";
}

Tabulated::Tabulated(Grid grid, std::vector<double> values, TabulatedKind kind)
    : grid_(grid), values_(std::move(values)), kind_(kind) {
  if (static_cast<int>(values_.size()) != grid_.bins()) {
    throw std::invalid_argument("tabulated function needs one value per bin");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("tabulated values must be finite");
    }
    if (kind_ == TabulatedKind::kDensity && v < 0.0) {
      throw std::invalid_argument("density values must be nonnegative");
    }
  }
}

Tabulated Tabulated::Constant(const Grid& grid, double value,
                              TabulatedKind kind) {
  return Tabulated(grid, std::vector<double>(grid.bins(), value), kind);
}

Tabulated Tabulated::FromFunction(const Grid& grid,
                                  const std::function<double(double)>& fn,
                                  TabulatedKind kind) {
  std::vector<double> values(grid.bins());
  for (int b = 0; b < grid.bins(); ++b) values[b] = fn(grid.Midpoint(b));
  return Tabulated(grid, std::move(values), kind);
}

double Tabulated::Interior(double x) const {
  const int last = grid_.bins() - 1;
  const double t = (x - grid_.Midpoint(0)) / grid_.width();
  if (t <= 0.0) return values_.front();
  if (t >= last) return values_.back();
  const double nearest = std::round(t);
  if (std::abs(t - nearest) < 1e-12) {
    return values_[static_cast<int>(nearest)];
  }
  const int j = static_cast<int>(t);
  const double frac = t - j;
  return values_[j] + frac * (values_[j + 1] - values_[j]);
}

double Tabulated::operator()(double x) const {
  if (kind_ == TabulatedKind::kDensity &&
      (x < grid_.lower() || x > grid_.upper())) {
    return 0.0;
  }
  return Interior(x);
}

NodeValues Tabulated::OnNodes() const {
  NodeValues out;
  out.values.resize(grid_.num_nodes());
  for (int i = 0; i < grid_.num_nodes(); ++i) {
    out.values[i] = Interior(grid_.Node(i));
  }
  return out;
}

std::vector<double> Tabulated::BinIntegrals() const {
  const int s = grid_.subsamples();
  const double h = grid_.node_step();
  std::vector<double> out(grid_.bins(), 0.0);
  for (int b = 0; b < grid_.bins(); ++b) {
    double sum = 0.0;
    for (int j = 0; j < s; ++j) sum += Interior(grid_.Node(b * s + j));
    out[b] = sum * h;
  }
  return out;
}

Tabulated Tabulated::Normalized() const {
  double mass = 0.0;
  for (double m : BinIntegrals()) mass += m;
  if (!(mass > 0.0)) {
    throw std::domain_error("cannot normalize a density with zero mass");
  }
  std::vector<double> values = values_;
  for (double& v : values) v /= mass;
  return Tabulated(grid_, std::move(values), kind_);
}

double Interp(const Tabulated& tab, double x) { return tab(x); }

namespace {

std::string FormatReal(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void WriteCsv(std::ostream& out, const Tabulated& tab,
              const std::string& x_name, const std::string& value_name) {
  out << x_name << ',' << value_name << '\n';
  for (int b = 0; b < tab.grid().bins(); ++b) {
    out << FormatReal(tab.grid().Midpoint(b)) << ',' << FormatReal(tab[b])
        << '\n';
  }
}

void WriteCsvFile(const std::string& path, const Tabulated& tab,
                  const std::string& x_name, const std::string& value_name) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  WriteCsv(out, tab, x_name, value_name);
}

Tabulated ReadCsv(std::istream& in, const Grid& grid, TabulatedKind kind) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV input");
  std::vector<double> values;
  int row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error("CSV row without a comma: " + line);
    }
    double x = 0.0;
    double v = 0.0;
    try {
      size_t used = 0;
      x = std::stod(line.substr(0, comma), &used);
      v = std::stod(line.substr(comma + 1), &used);
    } catch (const std::exception&) {
      throw std::runtime_error("malformed CSV row: " + line);
    }
    if (row >= grid.bins() || std::abs(x - grid.Midpoint(row)) > 1e-9) {
      throw std::runtime_error("CSV node does not match the grid: " + line);
    }
    values.push_back(v);
    ++row;
  }
  if (row != grid.bins()) {
    std::ostringstream msg;
    msg << "CSV has " << row << " rows, grid has " << grid.bins() << " bins";
    throw std::runtime_error(msg.str());
  }
  return Tabulated(grid, std::move(values), kind);
}

Tabulated ReadCsvFile(const std::string& path, const Grid& grid,
                      TabulatedKind kind) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return ReadCsv(in, grid, kind);
}

double SupDistance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("sup distance needs equal lengths");
  }
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace payrule
