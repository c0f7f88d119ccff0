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

#ifndef DDATOM_POTENTIAL_HPP
#define DDATOM_POTENTIAL_HPP

#include <span>
#include <string>

namespace ddatom {

// Two families of point-charge potentials in D spatial dimensions:
//
//   Newtonian          phi = Z/r for every D (the dimension-blind baseline).
//   DimensionConsistent  phi solves the D-dimensional Poisson equation with a
//                        point source; log at D=2, linear at D=1, r^-(D-2)
//                        for D >= 3.
//
// The consistent family needs a source-strength convention: the Poisson
// right-hand side can carry 4 pi Z (Gaussian4Pi) or S_{D-1} Z (SolidAngle).
// The two coincide at D=3 where S_2 = 4 pi.
enum class Family { Newtonian, DimensionConsistent };
enum class Convention { Gaussian4Pi, SolidAngle };

struct PotentialModel {
  Family family = Family::Newtonian;
  Convention convention = Convention::Gaussian4Pi;
  int dimension = 3;
  double charge = 1.0;  // Z > 0, Hartree units
  double cutoff = 1.0;  // r0 > 0, reference radius of the D=2 logarithm

  // Validates dimension >= 1, charge > 0, cutoff > 0.
  static PotentialModel make(Family family, Convention convention,
                             int dimension, double charge, double cutoff = 1.0);
};

// Source strength Q of the Poisson equation under the model's convention:
// 4 pi Z or S_{D-1} Z.
double source_strength(const PotentialModel& model);

// phi_D(r) for r > 0. Consistent family:
//   D = 1:  -(Q/2) |x|
//   D = 2:  -(Q/2 pi) ln(r/r0)
//   D >= 3:  Q / ((D-2) S_{D-1} r^{D-2})
// Newtonian family: Z/r in every dimension.
double electrostatic_potential(const PotentialModel& model, double r);

// Potential energy of the electron, V(r) = -phi(r) (electron charge -1).
double potential_energy(const PotentialModel& model, double r);

// r dV/dr, evaluated from the closed forms. Used by the virial bookkeeping.
double r_times_dV_dr(const PotentialModel& model, double r);

// Gauss-law flux through the sphere of radius r:
//   -S_{D-1} r^{D-1} phi'(r),
// analytically equal to the source strength Q for the consistent family at
// every r. The Newtonian family is accepted only at D=3 (where it happens to
// solve a Poisson equation); any other dimension is rejected.
double enclosed_flux(const PotentialModel& model, double r);

// max over samples of |phi''(r) + ((D-1)/r) phi'(r)| with central differences
// of width `step`; the radial Laplacian of a Poisson solution vanishes away
// from the origin. Consistent family only; every sample must satisfy
// r > 2 * step.
double poisson_residual(const PotentialModel& model,
                        std::span<const double> samples, double step);

// True when V grows without bound at large r (consistent family, D <= 2).
// Confining spectra have no dissociation threshold.
bool is_confining(const PotentialModel& model);

const char* family_name(Family family);          // "newtonian" / "consistent"
const char* convention_name(Convention conv);    // "gaussian-4pi" / "solid-angle"

}  // namespace ddatom

#endif  // DDATOM_POTENTIAL_HPP
