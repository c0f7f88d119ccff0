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

#ifndef DDATOM_ORACLES_HPP
#define DDATOM_ORACLES_HPP

#include "ddatom/eigensolver.hpp"
#include "ddatom/potential.hpp"
#include "ddatom/radial.hpp"

namespace ddatom {

// Closed-form spectrum of the -Z/r potential in D >= 2 dimensions:
//
//   E = -Z^2 / (2 n_eff^2),   n_eff = n_r + l + (D-1)/2.
//
// Derivation: the centrifugal bracket [l + (D-3)/2][l + (D-1)/2] equals
// L(L+1) with L = l + (D-3)/2, so the problem is 3D hydrogen at effective
// angular momentum L and principal number n_r + L + 1. (D, l) = (2, 0) gives
// n_eff = n_r + 1/2 and the famously deep E_0 = -2 Z^2.
double analytic_energy_newtonian(int dimension, int angular_momentum,
                                 int radial_quantum_number, double charge);

// Levels of the 1D linear potential V = k|x| on the half line (u(0) = 0):
// E_n = |a_n| (k^2/2)^{1/3} with a_n the n-th negative Airy zero (n 1-based,
// <= 10). The slope is k = 2 pi Z under Gaussian4Pi and k = Z under
// SolidAngle.
double analytic_energy_airy_1d(Convention convention, double charge, int n);

struct VirialReport {
  double kinetic = 0.0;          // E - <V>; centrifugal term counted as kinetic
  double potential_mean = 0.0;   // <V>
  double r_dv_dr_mean = 0.0;     // <r dV/dr>
  double residual = 0.0;         // |2T - <r V'>| / max(|T|, 1e-12)
};

// Virial identity 2<T> = <r dV/dr> evaluated with grid quadrature over the
// state's wavefunction. With the centrifugal piece booked as kinetic energy
// (it comes from the Laplacian) the identity holds for every central V; the
// 2D log potential gives <T> = Z exactly since r V' = 2Z there.
VirialReport virial_report(const BoundState& state,
                           const RadialProblem& problem);

}  // namespace ddatom

#endif  // DDATOM_ORACLES_HPP
