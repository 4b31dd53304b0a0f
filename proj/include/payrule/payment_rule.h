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

// Payment above the critical value, r(psi) = psi - discount(psi), tabulated
// at bin midpoints. A winning bidder with critical value v_c and potential
// profit psi pays v_c + r(psi). r == 0 is VCG.

#ifndef PAYRULE_PAYMENT_RULE_H_
#define PAYRULE_PAYMENT_RULE_H_

#include <vector>

#include "payrule/grid.h"

namespace payrule {

class PaymentRule {
 public:
  // Enforces 0 <= r_b <= midpoint(b). Values within 1e-12 (relative) of a
  // bound are snapped onto it; anything further out throws
  // std::invalid_argument.
  explicit PaymentRule(Tabulated tab);
  PaymentRule(const Grid& grid, std::vector<double> values);

  static PaymentRule Vcg(const Grid& grid);
  // r(psi) = psi: the bidder is charged its whole potential profit.
  static PaymentRule FullCharge(const Grid& grid);

  const Tabulated& tab() const { return tab_; }
  const Grid& grid() const { return tab_.grid(); }
  const std::vector<double>& values() const { return tab_.values(); }
  double operator[](int b) const { return tab_[b]; }
  double operator()(double psi) const { return tab_(psi); }

  // v_c + r(psi).
  double Payment(double critical_value, double psi) const {
    return critical_value + tab_(psi);
  }

  // Bins strictly between the bounds 0 and midpoint(b).
  int InteriorBins(double tol = 1e-9) const;

 private:
  Tabulated tab_;
};

}  // namespace payrule

#endif  // PAYRULE_PAYMENT_RULE_H_
