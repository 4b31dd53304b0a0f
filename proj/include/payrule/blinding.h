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

// Blinding: neither the bidder nor the center observes psi exactly. A true
// profit x produces a signal drawn from a Normal(x, sigma) kernel truncated
// to the grid range and renormalized for each x. Compounding f with the
// kernel gives the signal density g (bidder side, mu) or h (center side, w).

#ifndef PAYRULE_BLINDING_H_
#define PAYRULE_BLINDING_H_

#include <vector>

#include "payrule/distributions.h"
#include "payrule/grid.h"

namespace payrule {

// Density of the signal psi given true profit x.
double KernelDensity(double x, double sigma, double psi, const Grid& grid);

// g(psi) = integral of f(x) * kernel_x(psi) dx, tabulated as bin averages
// and renormalized. Throws std::invalid_argument unless sigma > 0.
Tabulated Blind(const Distribution& f, double sigma, const Grid& grid);

// Density over the true profit given a signal, proportional to
// f(x) * kernel_x(signal), at every quadrature node. Values satisfy
// sum * node_step() == 1. Throws std::invalid_argument for sigma <= 0 or a
// signal outside the grid, std::domain_error when the product has no mass.
NodeValues PosteriorOnNodes(const Distribution& f, double sigma, double signal,
                            const Grid& grid);

// Same posterior, tabulated as bin averages at the bin midpoints.
Tabulated Posterior(const Distribution& f, double sigma, double signal,
                    const Grid& grid);

// Posteriors for a signal at every bin midpoint, in bin order.
std::vector<NodeValues> MidpointPosteriors(const Distribution& f, double sigma,
                                           const Grid& grid);

struct BlindedModel {
  double mu_sigma = 0.0;
  double w_sigma = 0.0;
  Tabulated g;  // Bidder-side signal density.
  Tabulated h;  // Center-side density for the budget constraint.
};

BlindedModel MakeBlindedModel(const Distribution& f, double mu_sigma,
                              double w_sigma, const Grid& grid);

}  // namespace payrule

#endif  // PAYRULE_BLINDING_H_
