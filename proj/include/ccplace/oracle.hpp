// Copyright 2026 The ccplace Authors
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

#ifndef CCPLACE_ORACLE_HPP_
#define CCPLACE_ORACLE_HPP_

#include "ccplace/demand_model.hpp"
#include "ccplace/placement.hpp"

namespace ccplace {

struct OracleResult {
  double rate = 0.0;             // r(y) of the returned placement
  PlacementMatrix y;
  double lower_bound = 0.0;      // certified lower bound on the optimum
  double gap_certificate = 0.0;  // rate - lower_bound
  int iterations = 0;            // simplex pivots
};

// Numerical solution of
//   min r(y)  s.t.  storage(y) <= M, rows of y on the simplex,
// written as a linear program with one epigraph variable per max term and
// solved by a dense primal simplex. The certificate comes from a Lagrangian
// lower bound evaluated on the final dual prices.
//
// Throws ConvergenceError (carrying the best gap) when the pivot cap is hit
// or the final gap exceeds `tol`, and ResourceLimitError when the program is
// too large for a dense tableau.
OracleResult numeric_rmsc(double budget, const PopularityDistribution& dist, int k,
                          double tol = 1e-6, int max_iterations = 200000);

}  // namespace ccplace

#endif  // CCPLACE_ORACLE_HPP_
