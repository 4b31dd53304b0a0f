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

// Bidder shading strategy: either one shade for every psi or a tabulated
// shade s(psi). A bidder with potential profit psi reports psi - s below
// its true value.

#ifndef PAYRULE_STRATEGY_H_
#define PAYRULE_STRATEGY_H_

#include <optional>

#include "payrule/grid.h"

namespace payrule {

class Strategy {
 public:
  // Throws std::invalid_argument for negative or non-finite shades.
  static Strategy Constant(double shade);
  static Strategy Functional(Tabulated tab);

  bool is_constant() const { return !table_.has_value(); }
  double constant() const { return constant_; }
  const Tabulated& table() const { return *table_; }

  double At(double psi) const {
    return table_ ? (*table_)(psi) : constant_;
  }
  // Tabulated view on the grid; a constant becomes a flat table.
  Tabulated OnGrid(const Grid& grid) const;

 private:
  Strategy() = default;
  double constant_ = 0.0;
  std::optional<Tabulated> table_;
};

}  // namespace payrule

#endif  // PAYRULE_STRATEGY_H_
