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

#include "payrule/blinding.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace payrule {
namespace {

void CheckSigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("blinding stddev must be positive and finite");
  }
}

// Mass of the untruncated kernel centered at x that lands inside the grid.
double KernelNormalizer(double x, double sigma, const Grid& grid) {
  return NormalWindowMass(x, sigma, grid.lower(), grid.upper());
}

Tabulated BinAverages(const NodeValues& density, const Grid& grid) {
  const int s = grid.subsamples();
  std::vector<double> values(grid.bins(), 0.0);
  for (int b = 0; b < grid.bins(); ++b) {
    double sum = 0.0;
    for (int j = 0; j < s; ++j) sum += density.values[b * s + j];
    values[b] = sum / s;
  }
  return Tabulated(grid, std::move(values), TabulatedKind::kDensity)
      .Normalized();
}

}  // namespace

double KernelDensity(double x, double sigma, double psi, const Grid& grid) {
  CheckSigma(sigma);
  if (psi < grid.lower() || psi > grid.upper()) return 0.0;
  const double z = (psi - x) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * 2.5066282746310002) /
         KernelNormalizer(x, sigma, grid);
}

Tabulated Blind(const Distribution& f, double sigma, const Grid& grid) {
  CheckSigma(sigma);
  const NodeValues pdf = f.OnNodes(grid);
  const double h = grid.node_step();
  std::vector<double> weight(grid.num_nodes(), 0.0);
  for (int i = 0; i < grid.num_nodes(); ++i) {
    if (pdf.values[i] > 0.0) {
      weight[i] = pdf.values[i] * h /
                  KernelNormalizer(grid.Node(i), sigma, grid);
    }
  }
  // Averaging the kernel over a bin has a closed form, so each node carries
  // the exact bin average of g and narrow kernels lose no mass.
  std::vector<double> values(grid.bins(), 0.0);
  for (int b = 0; b < grid.bins(); ++b) {
    const double lo = grid.LowerEdge(b);
    const double hi = grid.UpperEdge(b);
    double sum = 0.0;
    for (int i = 0; i < grid.num_nodes(); ++i) {
      if (weight[i] == 0.0) continue;
      sum += weight[i] * NormalWindowMass(grid.Node(i), sigma, lo, hi);
    }
    values[b] = sum / grid.width();
  }
  return Tabulated(grid, std::move(values), TabulatedKind::kDensity)
      .Normalized();
}

NodeValues PosteriorOnNodes(const Distribution& f, double sigma, double signal,
                            const Grid& grid) {
  CheckSigma(sigma);
  if (!(signal >= grid.lower() && signal <= grid.upper())) {
    throw std::invalid_argument("signal outside the grid range");
  }
  const NodeValues pdf = f.OnNodes(grid);
  const int n = grid.num_nodes();
  // Log weights so that narrow kernels never underflow to an all-zero
  // posterior.
  std::vector<double> logw(n, -std::numeric_limits<double>::infinity());
  double top = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    if (!(pdf.values[i] > 0.0)) continue;
    const double x = grid.Node(i);
    const double z = (signal - x) / sigma;
    logw[i] = std::log(pdf.values[i]) - 0.5 * z * z -
              std::log(KernelNormalizer(x, sigma, grid));
    top = std::max(top, logw[i]);
  }
  if (!std::isfinite(top)) {
    throw std::domain_error("posterior has zero mass for signal " +
                            std::to_string(signal));
  }
  NodeValues out;
  out.values.resize(n);
  double mass = 0.0;
  for (int i = 0; i < n; ++i) {
    out.values[i] = std::exp(logw[i] - top);
    mass += out.values[i];
  }
  mass *= grid.node_step();
  for (double& v : out.values) v /= mass;
  return out;
}

Tabulated Posterior(const Distribution& f, double sigma, double signal,
                    const Grid& grid) {
  return BinAverages(PosteriorOnNodes(f, sigma, signal, grid), grid);
}

std::vector<NodeValues> MidpointPosteriors(const Distribution& f, double sigma,
                                           const Grid& grid) {
  std::vector<NodeValues> out;
  out.reserve(grid.bins());
  for (int b = 0; b < grid.bins(); ++b) {
    out.push_back(PosteriorOnNodes(f, sigma, grid.Midpoint(b), grid));
  }
  return out;
}

BlindedModel MakeBlindedModel(const Distribution& f, double mu_sigma,
                              double w_sigma, const Grid& grid) {
  return BlindedModel{mu_sigma, w_sigma, Blind(f, mu_sigma, grid),
                      Blind(f, w_sigma, grid)};
}

}  // namespace payrule
