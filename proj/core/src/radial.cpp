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

#include "ddatom/radial.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ddatom {

RadialProblem RadialProblem::make(int dimension, int angular_momentum,
                                  const PotentialModel& potential) {
  if (dimension < 1) {
    throw std::invalid_argument("RadialProblem: dimension must be >= 1");
  }
  if (angular_momentum < 0) {
    throw std::invalid_argument("RadialProblem: l must be >= 0");
  }
  if (dimension == 1 && angular_momentum != 0) {
    throw std::invalid_argument(
        "RadialProblem: D=1 forces l=0, there is no rotation in one dimension");
  }
  if (potential.dimension != dimension) {
    throw std::invalid_argument(
        "RadialProblem: potential dimension does not match the problem");
  }
  return RadialProblem{dimension, angular_momentum, potential};
}

double centrifugal_coefficient(int angular_momentum, int dimension) {
  if (angular_momentum < 0) {
    throw std::invalid_argument("centrifugal_coefficient: l must be >= 0");
  }
  if (dimension < 1) {
    throw std::invalid_argument("centrifugal_coefficient: D must be >= 1");
  }
  if (dimension == 1) return 0.0;
  // K = [l + (D-3)/2][l + (D-1)/2]/2. Half-integers are dyadic, so the
  // bracket values and their product are exact in binary floating point for
  // every (l, D) in range; in particular K(0,2) is exactly -0.125.
  const double a = angular_momentum + 0.5 * (dimension - 3);
  const double b = angular_momentum + 0.5 * (dimension - 1);
  return 0.5 * a * b;
}

double effective_potential(const RadialProblem& problem, double r) {
  if (!(r > 0.0)) {
    throw std::invalid_argument("effective_potential: r must be positive");
  }
  const double k =
      centrifugal_coefficient(problem.angular_momentum, problem.dimension);
  return k / (r * r) + potential_energy(problem.potential, r);
}

StabilityClass classify_stability(const RadialProblem& problem) {
  const double k =
      centrifugal_coefficient(problem.angular_momentum, problem.dimension);
  const bool consistent =
      problem.potential.family == Family::DimensionConsistent;

  StabilityClass result;
  if (consistent && problem.dimension >= 5) {
    // V ~ -r^-(D-2) with D-2 >= 3: attraction beats any inverse-square term,
    // the energy functional is unbounded below.
    result.kind = StabilityKind::Supercritical;
    result.net_inverse_square_coefficient.reset();
    return result;
  }

  double c = k;
  if (consistent && problem.dimension == 4) {
    // The potential itself is inverse-square: V = -c_V / r^2 with
    // c_V = Q / (4 pi^2) from V = -Q/(2 S_3 r^2), S_3 = 2 pi^2.
    const double c_v = source_strength(problem.potential) /
                       (4.0 * std::numbers::pi * std::numbers::pi);
    c = k - c_v;
    result.no_intrinsic_bound_states = (c > -0.125);
  }
  result.net_inverse_square_coefficient = c;
  if (c < -0.125) {
    result.kind = StabilityKind::Supercritical;
  } else if (c == -0.125) {
    // Exact comparison is deliberate: the marginal channels arise from dyadic
    // arithmetic (K(0,2), or 3/8 - Z/2 at Z=1) and land on -1/8 bitwise.
    result.kind = StabilityKind::Marginal;
  } else {
    result.kind = StabilityKind::Regular;
  }
  return result;
}

}  // namespace ddatom
