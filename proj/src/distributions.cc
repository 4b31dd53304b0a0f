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

#include "payrule/distributions.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace payrule {
namespace {

constexpr double kExponentialShape = 1e-8;
constexpr double kInvSqrt2 = 0.70710678118654752440;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double NormalCdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }

double GpdPdf(const Gpd& g, double x) {
  const double z = (x - g.location) / g.scale;
  if (z < 0.0) return 0.0;
  if (std::abs(g.shape) < kExponentialShape) return std::exp(-z) / g.scale;
  const double t = g.shape * z;
  if (t <= -1.0) return 0.0;
  return std::exp((-1.0 / g.shape - 1.0) * std::log1p(t)) / g.scale;
}

double GpdCdf(const Gpd& g, double x) {
  const double z = (x - g.location) / g.scale;
  if (z <= 0.0) return 0.0;
  if (std::abs(g.shape) < kExponentialShape) return -std::expm1(-z);
  const double t = g.shape * z;
  if (t <= -1.0) return 1.0;
  return -std::expm1(-std::log1p(t) / g.shape);
}

double BurrPdf(const BurrXII& b, double x) {
  if (x <= 0.0) return 0.0;
  const double y = x / b.scale;
  const double u = std::pow(y, b.c);
  return b.c * b.k / b.scale * std::pow(y, b.c - 1.0) *
         std::exp((-b.k - 1.0) * std::log1p(u));
}

double BurrCdf(const BurrXII& b, double x) {
  if (x <= 0.0) return 0.0;
  const double u = std::pow(x / b.scale, b.c);
  return -std::expm1(-b.k * std::log1p(u));
}

double HistogramPdf(const Histogram& h, double x) {
  if (x < h.lower || x > h.upper) return 0.0;
  const int n = static_cast<int>(h.densities.size());
  const double w = (h.upper - h.lower) / n;
  const int b = std::clamp(static_cast<int>((x - h.lower) / w), 0, n - 1);
  return h.densities[b];
}

double HistogramCdf(const Histogram& h, double x) {
  const int n = static_cast<int>(h.densities.size());
  const double w = (h.upper - h.lower) / n;
  double total = 0.0;
  for (int b = 0; b < n; ++b) {
    const double a = h.lower + b * w;
    const double e = std::min(x, a + w);
    if (e <= a) break;
    total += h.densities[b] * (e - a);
  }
  return total;
}

void Validate(const DistributionSpec& spec) {
  if (!std::isfinite(spec.lo) || !std::isfinite(spec.hi) ||
      !(spec.lo < spec.hi)) {
    throw std::invalid_argument("truncation window must satisfy lo < hi");
  }
  std::visit(
      Overloaded{
          [](const Gpd& g) {
            if (!(g.scale > 0.0) || !std::isfinite(g.scale)) {
              throw std::invalid_argument("GPD scale must be positive");
            }
            if (!std::isfinite(g.shape) || !std::isfinite(g.location)) {
              throw std::invalid_argument("GPD parameters must be finite");
            }
          },
          [](const BurrXII& b) {
            if (!(b.c > 0.0) || !(b.k > 0.0) || !(b.scale > 0.0)) {
              throw std::invalid_argument(
                  "Burr XII parameters must be positive");
            }
          },
          [](const TruncatedNormal& n) {
            if (!(n.stddev > 0.0) || !std::isfinite(n.mean)) {
              throw std::invalid_argument(
                  "normal stddev must be positive and mean finite");
            }
          },
          [](const Uniform&) {},
          [](const Histogram& h) {
            if (h.densities.empty() || !(h.lower < h.upper)) {
              throw std::invalid_argument("histogram needs bins and a range");
            }
            for (double d : h.densities) {
              if (!(d >= 0.0) || !std::isfinite(d)) {
                throw std::invalid_argument(
                    "histogram densities must be nonnegative");
              }
            }
          },
          [](const TabulatedDensity& t) {
            // Throws on size mismatch or negative values.
            Tabulated(t.grid, t.values, TabulatedKind::kDensity);
          },
      },
      spec.family);
}

}  // namespace

std::string Describe(const DistributionSpec& spec) {
  std::ostringstream out;
  std::visit(Overloaded{
                 [&](const Gpd& g) {
                   out << "GPD(location=" << g.location
                       << ", scale=" << g.scale << ", shape=" << g.shape
                       << ")";
                 },
                 [&](const BurrXII& b) {
                   out << "BurrXII(c=" << b.c << ", k=" << b.k
                       << ", scale=" << b.scale << ")";
                 },
                 [&](const TruncatedNormal& n) {
                   out << "Normal(mean=" << n.mean << ", stddev=" << n.stddev
                       << ")";
                 },
                 [&](const Uniform&) { out << "Uniform"; },
                 [&](const Histogram& h) {
                   out << "Histogram(" << h.densities.size() << " bins)";
                 },
                 [&](const TabulatedDensity& t) {
                   out << "Tabulated(" << t.values.size() << " nodes)";
                 },
             },
             spec.family);
  out << " on [" << spec.lo << ", " << spec.hi << "]";
  return out.str();
}

Distribution::Distribution(DistributionSpec spec) : spec_(std::move(spec)) {
  Validate(spec_);
  if (const auto* n = std::get_if<TruncatedNormal>(&spec_.family)) {
    window_mass_ = NormalWindowMass(n->mean, n->stddev, spec_.lo, spec_.hi);
    parent_cdf_lo_ = NormalCdf((spec_.lo - n->mean) / n->stddev);
  } else {
    parent_cdf_lo_ = ParentCdf(spec_.lo);
    window_mass_ = ParentCdf(spec_.hi) - parent_cdf_lo_;
  }
  if (!(window_mass_ > 0.0)) {
    throw std::invalid_argument("truncation window has no probability mass: " +
                                Describe(spec_));
  }
}

double Distribution::ParentPdf(double x) const {
  return std::visit(
      Overloaded{
          [&](const Gpd& g) { return GpdPdf(g, x); },
          [&](const BurrXII& b) { return BurrPdf(b, x); },
          [&](const TruncatedNormal& n) {
            const double z = (x - n.mean) / n.stddev;
            return std::exp(-0.5 * z * z) /
                   (n.stddev * 2.5066282746310002);
          },
          [&](const Uniform&) {
            return (x >= spec_.lo && x <= spec_.hi)
                       ? 1.0 / (spec_.hi - spec_.lo)
                       : 0.0;
          },
          [&](const Histogram& h) { return HistogramPdf(h, x); },
          [&](const TabulatedDensity& t) {
            if (x < t.grid.lower() || x > t.grid.upper()) return 0.0;
            return Tabulated(t.grid, t.values, TabulatedKind::kDensity)(x);
          },
      },
      spec_.family);
}

double Distribution::ParentCdf(double x) const {
  return std::visit(
      Overloaded{
          [&](const Gpd& g) { return GpdCdf(g, x); },
          [&](const BurrXII& b) { return BurrCdf(b, x); },
          [&](const TruncatedNormal& n) {
            return NormalCdf((x - n.mean) / n.stddev);
          },
          [&](const Uniform&) {
            return std::clamp((x - spec_.lo) / (spec_.hi - spec_.lo), 0.0,
                              1.0);
          },
          [&](const Histogram& h) { return HistogramCdf(h, x); },
          [&](const TabulatedDensity& t) {
            const Tabulated tab(t.grid, t.values, TabulatedKind::kDensity);
            const double upto = std::clamp(x, t.grid.lower(), t.grid.upper());
            return Integrate([&](double y) { return tab(y); }, t.grid,
                             t.grid.lower(), upto);
          },
      },
      spec_.family);
}

double Distribution::Pdf(double x) const {
  if (x < spec_.lo || x > spec_.hi) return 0.0;
  return ParentPdf(x) / window_mass_;
}

double Distribution::Cdf(double x) const {
  if (x <= spec_.lo) return 0.0;
  if (x >= spec_.hi) return 1.0;
  double below;
  if (const auto* n = std::get_if<TruncatedNormal>(&spec_.family)) {
    below = NormalWindowMass(n->mean, n->stddev, spec_.lo, x);
  } else {
    below = ParentCdf(x) - parent_cdf_lo_;
  }
  return std::clamp(below / window_mass_, 0.0, 1.0);
}

NodeValues Distribution::OnNodes(const Grid& grid) const {
  NodeValues out;
  out.values.resize(grid.num_nodes());
  if (const auto* t = std::get_if<TabulatedDensity>(&spec_.family)) {
    const Tabulated tab(t->grid, t->values, TabulatedKind::kDensity);
    for (int i = 0; i < grid.num_nodes(); ++i) {
      const double x = grid.Node(i);
      out.values[i] = (x < spec_.lo || x > spec_.hi) ? 0.0
                                                      : tab(x) / window_mass_;
    }
    return out;
  }
  for (int i = 0; i < grid.num_nodes(); ++i) out.values[i] = Pdf(grid.Node(i));
  return out;
}

std::vector<double> Distribution::BinMasses(const Grid& grid) const {
  std::vector<double> masses(grid.bins());
  double below = Cdf(grid.LowerEdge(0));
  for (int b = 0; b < grid.bins(); ++b) {
    const double above = Cdf(grid.UpperEdge(b));
    masses[b] = std::max(0.0, above - below);
    below = above;
  }
  return masses;
}

double Pdf(const Distribution& dist, double x) { return dist.Pdf(x); }
double Cdf(const Distribution& dist, double x) { return dist.Cdf(x); }

double Mean(const Distribution& dist, const Grid& grid) {
  const NodeValues pdf = dist.OnNodes(grid);
  double mass = 0.0;
  double first = 0.0;
  for (int i = 0; i < grid.num_nodes(); ++i) {
    mass += pdf.values[i];
    first += grid.Node(i) * pdf.values[i];
  }
  if (!(mass > 0.0)) {
    throw std::domain_error("distribution has no mass on the grid");
  }
  return first / mass;
}

EmpiricalFit FitEmpirical(const std::vector<double>& samples,
                          const Grid& grid) {
  if (samples.empty()) {
    throw std::invalid_argument("empirical fit needs at least one sample");
  }
  std::vector<double> counts(grid.bins(), 0.0);
  EmpiricalFit fit;
  for (double x : samples) {
    if (!std::isfinite(x) || x < grid.lower() || x > grid.upper()) {
      ++fit.dropped;
      continue;
    }
    counts[grid.BinOf(x)] += 1.0;
    ++fit.used;
  }
  if (fit.used == 0) {
    throw std::invalid_argument("all " + std::to_string(fit.dropped) +
                                " samples fall outside the grid range");
  }
  Histogram hist{grid.lower(), grid.upper(), {}};
  hist.densities.resize(grid.bins());
  for (int b = 0; b < grid.bins(); ++b) {
    hist.densities[b] = counts[b] / (fit.used * grid.width());
  }
  fit.spec = DistributionSpec{std::move(hist), grid.lower(), grid.upper()};
  return fit;
}

std::vector<double> ReadSamplesFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open samples file " + path);
  std::vector<double> samples;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    try {
      samples.push_back(std::stod(line.substr(start)));
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": not a number");
    }
  }
  return samples;
}

double NormalWindowMass(double mean, double stddev, double a, double b) {
  if (!(b > a)) return 0.0;
  const double za = (a - mean) / stddev;
  const double zb = (b - mean) / stddev;
  if (za >= 0.0) {
    return 0.5 * (std::erfc(za * kInvSqrt2) - std::erfc(zb * kInvSqrt2));
  }
  if (zb <= 0.0) {
    return 0.5 * (std::erfc(-zb * kInvSqrt2) - std::erfc(-za * kInvSqrt2));
  }
  return 1.0 - 0.5 * std::erfc(-za * kInvSqrt2) -
         0.5 * std::erfc(zb * kInvSqrt2);
}

}  // namespace payrule
