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

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "ddatom/potential.hpp"
#include "ddatom/special_functions.hpp"
#include "doctest.h"

using namespace ddatom;

namespace {
constexpr double kPi = std::numbers::pi;

PotentialModel consistent(int dimension, double charge,
                          Convention conv = Convention::Gaussian4Pi,
                          double cutoff = 1.0) {
  return PotentialModel::make(Family::DimensionConsistent, conv, dimension,
                              charge, cutoff);
}

PotentialModel newtonian(int dimension, double charge) {
  return PotentialModel::make(Family::Newtonian, Convention::Gaussian4Pi,
                              dimension, charge);
}
}  // namespace

TEST_SUITE_BEGIN("potential");

TEST_CASE("model validation") {
  CHECK_THROWS_AS(PotentialModel::make(Family::Newtonian,
                                       Convention::Gaussian4Pi, 0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(newtonian(3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(newtonian(3, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(consistent(2, 1.0, Convention::Gaussian4Pi, 0.0),
                  std::invalid_argument);
}

TEST_CASE("source strength by convention") {
  CHECK(source_strength(consistent(2, 1.0)) ==
        doctest::Approx(4 * kPi).epsilon(1e-15));
  CHECK(source_strength(consistent(2, 1.0, Convention::SolidAngle)) ==
        doctest::Approx(2 * kPi).epsilon(1e-15));
  CHECK(source_strength(consistent(5, 2.0, Convention::SolidAngle)) ==
        doctest::Approx(2.0 * sphere_surface_area(5)).epsilon(1e-15));
  // The conventions coincide at D=3 where S_2 = 4 pi.
  CHECK(source_strength(consistent(3, 1.7)) ==
        source_strength(consistent(3, 1.7, Convention::SolidAngle)));
}

TEST_CASE("newtonian potential is Z/r in every dimension") {
  for (int d : {1, 2, 3, 7, 12}) {
    CHECK(electrostatic_potential(newtonian(d, 1.0), 2.0) == 0.5);
    CHECK(potential_energy(newtonian(d, 1.0), 2.0) == -0.5);
  }
  CHECK(potential_energy(newtonian(3, 2.0), 4.0) == -0.5);
}

TEST_CASE("consistent potential closed forms") {
  // D=3 reduces to the newtonian form under either convention.
  for (const auto conv : {Convention::Gaussian4Pi, Convention::SolidAngle}) {
    for (const double r : {0.3, 1.0, 8.0}) {
      CHECK(electrostatic_potential(consistent(3, 1.5, conv), r) ==
            doctest::Approx(1.5 / r).epsilon(1e-14));
    }
  }
  // D=2, Gaussian4Pi: phi = -2 Z ln(r / r0).
  CHECK(electrostatic_potential(consistent(2, 1.0), 0.1) ==
        doctest::Approx(-2.0 * std::log(0.1)).epsilon(1e-14));
  CHECK(electrostatic_potential(consistent(2, 1.0), 1.0) == 0.0);
  // D=1, SolidAngle: Q = 2Z, phi = -(Q/2)|x| = -Z|x|.
  CHECK(electrostatic_potential(consistent(1, 1.0, Convention::SolidAngle),
                                2.0) == doctest::Approx(-2.0).epsilon(1e-15));
  // D=4, SolidAngle: V(1) = -Z/((D-2) r^{D-2}) = -1/2.
  CHECK(potential_energy(consistent(4, 1.0, Convention::SolidAngle), 1.0) ==
        doctest::Approx(-0.5).epsilon(1e-14));
  // V = -phi throughout.
  for (int d : {1, 2, 3, 4, 6}) {
    const auto model = consistent(d, 1.3, Convention::SolidAngle);
    for (const double r : {0.4, 1.9}) {
      CHECK(potential_energy(model, r) == -electrostatic_potential(model, r));
    }
  }
}

TEST_CASE("cutoff only shifts the two-dimensional logarithm") {
  const auto a = consistent(2, 1.0, Convention::Gaussian4Pi, 1.0);
  const auto b = consistent(2, 1.0, Convention::Gaussian4Pi, 3.0);
  const double shift = 2.0 * std::log(3.0);  // (Q / 2 pi) ln(r0'/r0)
  for (const double r : {0.2, 1.0, 40.0}) {
    CHECK(electrostatic_potential(b, r) - electrostatic_potential(a, r) ==
          doctest::Approx(shift).epsilon(1e-13));
  }
  // No cutoff dependence in any other dimension.
  CHECK(electrostatic_potential(consistent(3, 1.0, Convention::Gaussian4Pi, 1.0), 2.0) ==
        electrostatic_potential(consistent(3, 1.0, Convention::Gaussian4Pi, 9.0), 2.0));
}

TEST_CASE("radial derivative combination r dV/dr") {
  // Newtonian: r V' = Z / r.
  CHECK(r_times_dV_dr(newtonian(5, 1.0), 2.0) ==
        doctest::Approx(0.5).epsilon(1e-14));
  // 2D log: r V' = Q / (2 pi), a constant (2Z Gaussian4Pi, Z SolidAngle).
  CHECK(r_times_dV_dr(consistent(2, 1.0), 0.37) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r_times_dV_dr(consistent(2, 1.0, Convention::SolidAngle), 5.5) ==
        doctest::Approx(1.0).epsilon(1e-14));
  // Power law D >= 3: r V' = -(D-2) V.
  const auto m = consistent(6, 1.0, Convention::SolidAngle);
  CHECK(r_times_dV_dr(m, 1.3) ==
        doctest::Approx(-4.0 * potential_energy(m, 1.3)).epsilon(1e-13));
  // 1D linear: r V' = (Q/2) r.
  CHECK(r_times_dV_dr(consistent(1, 1.0), 3.0) ==
        doctest::Approx(2.0 * kPi * 3.0).epsilon(1e-14));
}

TEST_CASE("gauss law flux") {
  // Constant in r and equal to the source strength.
  for (int d = 1; d <= 8; ++d) {
    const auto model = consistent(d, 2.0, Convention::SolidAngle);
    const double q = source_strength(model);
    for (const double r : {1e-2, 1.0, 1e2}) {
      CHECK(enclosed_flux(model, r) == doctest::Approx(q).epsilon(1e-13));
    }
  }
  CHECK(enclosed_flux(consistent(2, 1.0), 0.1) ==
        doctest::Approx(4 * kPi).epsilon(1e-13));
  // The newtonian form solves a Poisson equation only at D=3.
  CHECK(enclosed_flux(newtonian(3, 1.0), 7.0) ==
        doctest::Approx(4 * kPi).epsilon(1e-13));
  CHECK_THROWS_AS(enclosed_flux(newtonian(4, 1.0), 1.0),
                  std::invalid_argument);
}

TEST_CASE("poisson residual vanishes away from the origin") {
  const std::vector<double> samples = {1.0, 2.0, 5.0};
  for (int d = 2; d <= 8; ++d) {
    for (const auto conv : {Convention::Gaussian4Pi, Convention::SolidAngle}) {
      CHECK(poisson_residual(consistent(d, 1.0, conv), samples, 1e-4) < 1e-5);
    }
  }
  // Z/r in D=5 is not harmonic; the residual sees it immediately.
  CHECK_THROWS_AS(poisson_residual(newtonian(5, 1.0), samples, 1e-4),
                  std::invalid_argument);
  const std::vector<double> too_close = {1e-5};
  CHECK_THROWS_AS(poisson_residual(consistent(3, 1.0), too_close, 1e-4),
                  std::invalid_argument);
}

TEST_CASE("confinement depends on family and dimension") {
  CHECK(is_confining(consistent(1, 1.0)));
  CHECK(is_confining(consistent(2, 1.0)));
  CHECK_FALSE(is_confining(consistent(3, 1.0)));
  CHECK_FALSE(is_confining(consistent(6, 1.0)));
  for (int d : {1, 2, 3, 9}) CHECK_FALSE(is_confining(newtonian(d, 1.0)));
}

TEST_CASE("names used by serialization") {
  CHECK(std::string(family_name(Family::Newtonian)) == "newtonian");
  CHECK(std::string(family_name(Family::DimensionConsistent)) == "consistent");
  CHECK(std::string(convention_name(Convention::Gaussian4Pi)) ==
        "gaussian-4pi");
  CHECK(std::string(convention_name(Convention::SolidAngle)) == "solid-angle");
}

TEST_SUITE_END();
