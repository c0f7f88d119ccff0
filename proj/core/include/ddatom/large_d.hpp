// Copyright 2026 The ddatom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DDATOM_LARGE_D_HPP
#define DDATOM_LARGE_D_HPP

#include <optional>
#include <vector>

#include "ddatom/eigensolver.hpp"
#include "ddatom/radial.hpp"

namespace ddatom {

// Minimum of the effective potential, the putative classical limit of the
// ground state as D grows at fixed quantum numbers.
struct ClassicalPoint {
  bool exists = false;
  double r_star = 0.0;  // minimizer of U_eff
  double u_min = 0.0;   // U_eff(r_star)
  double omega = 0.0;   // sqrt(U_eff''(r_star)), harmonic frequency
};

// Newtonian family: closed forms r* = 2K/Z, U_min = -Z^2/(4K),
// omega = Z^2/(2 sqrt(2) K^{3/2}); no minimum when K <= 0 (D <= 3 at l = 0).
// Consistent family: golden-section search on a log-spaced bracket
// [1e-6, 1e6], refined to 1e-12 relative; monotone or bottomless profiles
// (D >= 4) report exists = false.
ClassicalPoint classical_minimum(const RadialProblem& problem);

struct LargeDRow {
  int dimension = 0;
  // Absent when the dimension is classified Collapse / NoBoundStates.
  std::optional<double> numeric_ground;       // extrapolated E_0
  ClassicalPoint classical;
  std::optional<double> harmonic_estimate;    // u_min + omega/2
  std::optional<double> ratio;                // E_0 / u_min
  std::optional<double> predicted_ratio;      // (D-3)/(D-1), Newtonian l = 0
  CollapseReport::Classification classification =
      CollapseReport::Classification::Stable;
};

// One row per dimension: ground state (extrapolated, on default grids) vs the
// classical minimum. For the consistent family at D >= 4 the row carries the
// collapse classification instead; the scan is the quantitative form of the
// question whether the large-D limit is classical at all.
std::vector<LargeDRow> classical_limit_scan(Family family,
                                            Convention convention,
                                            double charge,
                                            int angular_momentum,
                                            const std::vector<int>& dims);

}  // namespace ddatom

#endif  // DDATOM_LARGE_D_HPP
