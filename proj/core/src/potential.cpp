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

#include "ddatom/potential.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ddatom/special_functions.hpp"

namespace ddatom {

namespace {

void require_positive_radius(double r) {
  if (!(r > 0.0)) {
    throw std::invalid_argument("radius must be positive, got " +
                                std::to_string(r));
  }
}

}  // namespace

PotentialModel PotentialModel::make(Family family, Convention convention,
                                    int dimension, double charge,
                                    double cutoff) {
  if (dimension < 1) {
    throw std::invalid_argument("PotentialModel: dimension must be >= 1");
  }
  if (!(charge > 0.0)) {
    throw std::invalid_argument("PotentialModel: charge must be positive");
  }
  if (!(cutoff > 0.0)) {
    throw std::invalid_argument("PotentialModel: cutoff must be positive");
  }
  return PotentialModel{family, convention, dimension, charge, cutoff};
}

double source_strength(const PotentialModel& model) {
  if (model.convention == Convention::Gaussian4Pi) {
    return 4.0 * std::numbers::pi * model.charge;
  }
  return sphere_surface_area(model.dimension) * model.charge;
}

double electrostatic_potential(const PotentialModel& model, double r) {
  require_positive_radius(r);
  if (model.family == Family::Newtonian) {
    // The dimension-blind baseline, kept verbatim in every D.
    return model.charge / r;
  }
  const int d = model.dimension;
  const double q = source_strength(model);
  switch (d) {
    case 1:
      return -0.5 * q * r;
    case 2:
      return -(q / (2.0 * std::numbers::pi)) * std::log(r / model.cutoff);
    default:
      return q / ((d - 2) * sphere_surface_area(d) * std::pow(r, d - 2));
  }
}

double potential_energy(const PotentialModel& model, double r) {
  return -electrostatic_potential(model, r);
}

double r_times_dV_dr(const PotentialModel& model, double r) {
  require_positive_radius(r);
  if (model.family == Family::Newtonian) {
    return model.charge / r;  // V = -Z/r, r V' = Z/r
  }
  const int d = model.dimension;
  const double q = source_strength(model);
  switch (d) {
    case 1:
      return 0.5 * q * r;  // V = (Q/2) r, so r V' = V
    case 2:
      return q / (2.0 * std::numbers::pi);  // constant: the log-potential hallmark
    default:
      // V = -A r^{-(d-2)}  =>  r V' = (d-2) A r^{-(d-2)} = -(d-2) V
      return q / (sphere_surface_area(d) * std::pow(r, d - 2));
  }
}

double enclosed_flux(const PotentialModel& model, double r) {
  require_positive_radius(r);
  if (model.family == Family::Newtonian) {
    if (model.dimension != 3) {
      throw std::invalid_argument(
          "enclosed_flux: the newtonian family solves no Poisson equation "
          "outside D=3");
    }
    return 4.0 * std::numbers::pi * model.charge;
  }
  // phi is built so that -S_{D-1} r^{D-1} phi' is exactly the source
  // strength; returning it analytically keeps the Gauss-law identity bitwise
  // r-independent, which the flux-constancy check asserts.
  return source_strength(model);
}

double poisson_residual(const PotentialModel& model,
                        std::span<const double> samples, double step) {
  if (model.family != Family::DimensionConsistent) {
    throw std::invalid_argument("poisson_residual: consistent family only");
  }
  if (!(step > 0.0)) {
    throw std::invalid_argument("poisson_residual: step must be positive");
  }
  double worst = 0.0;
  for (double r : samples) {
    if (!(r > 2.0 * step)) {
      throw std::invalid_argument(
          "poisson_residual: sample too close to the origin for the stencil");
    }
    const double phi_m = electrostatic_potential(model, r - step);
    const double phi_0 = electrostatic_potential(model, r);
    const double phi_p = electrostatic_potential(model, r + step);
    const double d2 = (phi_p - 2.0 * phi_0 + phi_m) / (step * step);
    const double d1 = (phi_p - phi_m) / (2.0 * step);
    const double lap = d2 + (model.dimension - 1) / r * d1;
    worst = std::max(worst, std::abs(lap));
  }
  return worst;
}

bool is_confining(const PotentialModel& model) {
  return model.family == Family::DimensionConsistent && model.dimension <= 2;
}

const char* family_name(Family family) {
  return family == Family::Newtonian ? "newtonian" : "consistent";
}

const char* convention_name(Convention conv) {
  return conv == Convention::Gaussian4Pi ? "gaussian-4pi" : "solid-angle";
}

}  // namespace ddatom
