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

#ifndef DDATOM_GRID_HPP
#define DDATOM_GRID_HPP

namespace ddatom {

// Uniform radial mesh on [r_min, r_max] with n interior points and Dirichlet
// walls at both ends. The default wall sits at r_min = 0: interior nodes are
// then r_i = i h with u pinned to zero at the origin node itself, which keeps
// the O(h^2) convergence of Coulomb levels (a wall displaced to r = h costs an
// O(h) energy shift). Collapse diagnostics use r_min > 0 ladders instead.
struct GridSpec {
  double r_min = 0.0;
  double r_max = 1.0;
  int interior_points = 3;

  double spacing() const { return (r_max - r_min) / (interior_points + 1); }
  // Interior node position, i in [1, interior_points].
  double node(int i) const { return r_min + i * spacing(); }

  // Validates 0 <= r_min < r_max and interior_points >= 3.
  static GridSpec make(double r_min, double r_max, int interior_points);
};

}  // namespace ddatom

#endif  // DDATOM_GRID_HPP
