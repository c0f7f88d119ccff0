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

#include "ddatom/oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ddatom/special_functions.hpp"

namespace ddatom {

double analytic_energy_newtonian(int dimension, int angular_momentum,
                                 int radial_quantum_number, double charge) {
  if (dimension < 2) {
    throw std::invalid_argument(
        "analytic_energy_newtonian: closed form needs D >= 2 "
        "(the D=1 Newtonian spectrum is not of Balmer type)");
  }
  if (angular_momentum < 0 || radial_quantum_number < 0) {
    throw std::invalid_argument(
        "analytic_energy_newtonian: quantum numbers must be >= 0");
  }
  if (!(charge > 0.0)) {
    throw std::invalid_argument("analytic_energy_newtonian: Z must be > 0");
  }
  const double n_eff = radial_quantum_number + angular_momentum +
                       0.5 * (dimension - 1);
  return -charge * charge / (2.0 * n_eff * n_eff);
}

double analytic_energy_airy_1d(Convention convention, double charge, int n) {
  if (n < 1 || n > 10) {
    throw std::invalid_argument(
        "analytic_energy_airy_1d: level index must be in [1, 10]");
  }
  if (!(charge > 0.0)) {
    throw std::invalid_argument("analytic_energy_airy_1d: Z must be > 0");
  }
  // V = (k/2) |x| with source strength Q = k: Q = 4 pi Z or S_0 Z = 2 Z.
  const double slope = convention == Convention::Gaussian4Pi
                           ? 2.0 * std::numbers::pi * charge
                           : charge;
  return -airy_negative_zero(n) * std::cbrt(0.5 * slope * slope);
}

VirialReport virial_report(const BoundState& state,
                           const RadialProblem& problem) {
  const int n = static_cast<int>(state.wavefunction.size());
  if (n == 0) {
    throw std::invalid_argument("virial_report: empty wavefunction");
  }

  const double h = state.grid.spacing();
  const bool half_mesh =
      state.scheme == TridiagonalOperator::Scheme::ConservativeHalfMesh;
  const double hh = half_mesh
                        ? (state.grid.r_max - state.grid.r_min) / (n + 0.5)
                        : h;

  double norm = 0.0;
  double v_mean = 0.0;
  double rdv_mean = 0.0;
  for (int j = 0; j < n; ++j) {
    const double r = half_mesh ? state.grid.r_min + (j + 0.5) * hh
                               : state.grid.node(j + 1);
    const double w = state.wavefunction[j] * state.wavefunction[j];
    norm += w;
    v_mean += w * potential_energy(problem.potential, r);
    rdv_mean += w * r_times_dV_dr(problem.potential, r);
  }
  norm *= hh;
  v_mean *= hh / norm;
  rdv_mean *= hh / norm;

  VirialReport report;
  report.potential_mean = v_mean;
  report.r_dv_dr_mean = rdv_mean;
  report.kinetic = state.energy - v_mean;
  report.residual = std::abs(2.0 * report.kinetic - rdv_mean) /
                    std::max(std::abs(report.kinetic), 1e-12);
  return report;
}

}  // namespace ddatom
