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

// Models of the potential-profit distribution f. Every distribution is a
// parent family restricted to a truncation window [lo, hi] and renormalized
// to unit mass on it.

#ifndef PAYRULE_DISTRIBUTIONS_H_
#define PAYRULE_DISTRIBUTIONS_H_

#include <string>
#include <variant>
#include <vector>

#include "payrule/grid.h"

namespace payrule {

// Generalized Pareto. shape == 0 is the exponential; shape < 0 has finite
// support ending at location - scale / shape.
struct Gpd {
  double location = 0.0;
  double scale = 1.0;
  double shape = 0.0;
};

// Burr type XII with shape parameters c, k and a scale:
// F(x) = 1 - (1 + (x/scale)^c)^-k for x > 0.
struct BurrXII {
  double c = 1.0;
  double k = 1.0;
  double scale = 1.0;
};

struct TruncatedNormal {
  double mean = 0.0;
  double stddev = 1.0;
};

// Uniform over the truncation window.
struct Uniform {};

// Piecewise-constant density on equal-width bins over [lower, upper].
struct Histogram {
  double lower = 0.0;
  double upper = 1.0;
  std::vector<double> densities;
};

// A tabulated density, linearly interpolated.
struct TabulatedDensity {
  std::vector<double> values;
  Grid grid{0.0, 1.0, 2, 1};
};

using Family =
    std::variant<Gpd, BurrXII, TruncatedNormal, Uniform, Histogram,
                 TabulatedDensity>;

struct DistributionSpec {
  Family family;
  double lo = 0.0;
  double hi = 10.0;
};

std::string Describe(const DistributionSpec& spec);

class Distribution {
 public:
  // Throws std::invalid_argument for invalid parameters or a truncation
  // window that carries no parent mass.
  explicit Distribution(DistributionSpec spec);

  const DistributionSpec& spec() const { return spec_; }
  double lo() const { return spec_.lo; }
  double hi() const { return spec_.hi; }

  // Truncated and renormalized; zero outside [lo, hi] and outside the
  // parent support.
  double Pdf(double x) const;
  double Cdf(double x) const;

  // Untruncated parent family.
  double ParentPdf(double x) const;
  double ParentCdf(double x) const;

  // Parent probability of the truncation window.
  double window_mass() const { return window_mass_; }

  // Pdf at each quadrature node of the grid.
  NodeValues OnNodes(const Grid& grid) const;
  // Cdf(upper edge) - Cdf(lower edge) per bin.
  std::vector<double> BinMasses(const Grid& grid) const;

 private:
  DistributionSpec spec_;
  double parent_cdf_lo_ = 0.0;
  double window_mass_ = 1.0;
};

double Pdf(const Distribution& dist, double x);
double Cdf(const Distribution& dist, double x);

// Quadrature of psi * pdf(psi) over the grid, divided by the quadrature
// mass of pdf so very narrow densities keep their location.
double Mean(const Distribution& dist, const Grid& grid);

struct EmpiricalFit {
  DistributionSpec spec;
  int used = 0;
  int dropped = 0;
};

// Histogram density on the grid's bins. Samples outside [lower, upper] are
// dropped and counted. Throws std::invalid_argument when no sample lies in
// range.
EmpiricalFit FitEmpirical(const std::vector<double>& samples,
                          const Grid& grid);

// One real per line; blank lines and lines starting with '#' are skipped.
std::vector<double> ReadSamplesFile(const std::string& path);

// P(a <= Z <= b) for a normal with the given mean and stddev, computed from
// the tail that avoids cancellation.
double NormalWindowMass(double mean, double stddev, double a, double b);

}  // namespace payrule

#endif  // PAYRULE_DISTRIBUTIONS_H_
