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

#ifndef DDATOM_RADIAL_HPP
#define DDATOM_RADIAL_HPP

#include <optional>

#include "ddatom/potential.hpp"

namespace ddatom {

// Reduced radial problem in D dimensions,
//
//   -1/2 u'' + [ K(l,D)/r^2 + V(r) ] u = E u,   u(0) = 0,
//
// with K(l,D) = [l + (D-3)/2][l + (D-1)/2]/2. D = 1 has no centrifugal term
// and forces l = 0 (a rotating particle in one dimension makes no sense); the
// problem then lives on the half line and picks the odd sector.
struct RadialProblem {
  int dimension = 3;
  int angular_momentum = 0;
  PotentialModel potential;

  // Validates D >= 1, l >= 0, D = 1 => l = 0, potential.dimension == dimension.
  static RadialProblem make(int dimension, int angular_momentum,
                            const PotentialModel& potential);
};

// K(l, D). Defined as 0 for D = 1. Note K(0, 2) = -1/8: an attractive
// centrifugal term, exactly at the critical inverse-square strength.
double centrifugal_coefficient(int angular_momentum, int dimension);

// U_eff(r) = K/r^2 + V(r), r > 0.
double effective_potential(const RadialProblem& problem, double r);

// Small-r stability of U_eff. With U_eff ~ c/r^2 near the origin the radial
// operator is bounded below iff c >= -1/8 (indicial exponents 1/2 +- sqrt(1/4
// + 2c)). The consistent potential itself contributes at order r^-2 for D = 4
// and overwhelms the centrifugal term entirely for D >= 5.
enum class StabilityKind { Regular, Marginal, Supercritical };

struct StabilityClass {
  StabilityKind kind = StabilityKind::Regular;
  // c of the c/r^2 small-r limit; absent when V diverges faster than r^-2.
  std::optional<double> net_inverse_square_coefficient;
  // Set for a subcritical pure inverse-square attraction (consistent D = 4
  // with c > -1/8): the operator is regular yet scale-free, so it binds
  // nothing.
  bool no_intrinsic_bound_states = false;
};

StabilityClass classify_stability(const RadialProblem& problem);

}  // namespace ddatom

#endif  // DDATOM_RADIAL_HPP
