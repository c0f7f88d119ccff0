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

#include "ddatom/large_d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ddatom/parallel.hpp"
#include "ddatom/potential.hpp"

namespace ddatom {

namespace {

double u_eff_derivative(const RadialProblem& problem, double r) {
  const double k =
      centrifugal_coefficient(problem.angular_momentum, problem.dimension);
  // U' = -2K/r^3 + V'(r); V' recovered from the closed-form r V'.
  return -2.0 * k / (r * r * r) +
         r_times_dV_dr(problem.potential, r) / r;
}

ClassicalPoint golden_section_minimum(const RadialProblem& problem) {
  ClassicalPoint point;
  const double t_lo = std::log(1e-6);
  const double t_hi = std::log(1e6);
  // A single stationary point separates the decreasing and increasing parts
  // for every supported shape, so endpoint derivative signs decide
  // monotonicity.
  if (!(u_eff_derivative(problem, 1e-6) < 0.0) ||
      !(u_eff_derivative(problem, 1e6) > 0.0)) {
    return point;
  }

  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto value = [&problem](double t) {
    return effective_potential(problem, std::exp(t));
  };
  double a = t_lo, b = t_hi;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = value(c), fd = value(d);
  while (b - a > 1e-12) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = value(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = value(d);
    }
  }
  const double r_star = std::exp(0.5 * (a + b));
  const double step = 1e-4 * r_star;
  const double curvature = (effective_potential(problem, r_star + step) -
                            2.0 * effective_potential(problem, r_star) +
                            effective_potential(problem, r_star - step)) /
                           (step * step);
  if (!(curvature > 0.0)) return point;
  point.exists = true;
  point.r_star = r_star;
  point.u_min = effective_potential(problem, r_star);
  point.omega = std::sqrt(curvature);
  return point;
}

}  // namespace

ClassicalPoint classical_minimum(const RadialProblem& problem) {
  if (problem.potential.family == Family::Newtonian) {
    const double k =
        centrifugal_coefficient(problem.angular_momentum, problem.dimension);
    const double z = problem.potential.charge;
    ClassicalPoint point;
    if (!(k > 0.0)) return point;  // D <= 3 at l = 0: no stationary point
    point.exists = true;
    point.r_star = 2.0 * k / z;
    point.u_min = -z * z / (4.0 * k);
    point.omega = z * z / (2.0 * std::sqrt(2.0) * k * std::sqrt(k));
    return point;
  }
  // Consistent family: D >= 4 is bottomless at the origin (the stationary
  // point, when present, is a barrier top, not a minimum).
  if (problem.dimension >= 4) return ClassicalPoint{};
  return golden_section_minimum(problem);
}

std::vector<LargeDRow> classical_limit_scan(Family family,
                                            Convention convention,
                                            double charge,
                                            int angular_momentum,
                                            const std::vector<int>& dims) {
  if (!std::is_sorted(dims.begin(), dims.end())) {
    throw std::invalid_argument("classical_limit_scan: dims must be ascending");
  }
  if (family == Family::Newtonian && angular_momentum == 0) {
    for (const int d : dims) {
      if (d < 4) {
        throw std::invalid_argument(
            "classical_limit_scan: Newtonian l=0 needs D >= 4 "
            "(no classical minimum below that)");
      }
    }
  }

  std::vector<LargeDRow> rows(dims.size());
  parallel_for(static_cast<int>(dims.size()), [&](int i) {
    const int dim = dims[i];
    LargeDRow& row = rows[i];
    row.dimension = dim;
    const PotentialModel model =
        PotentialModel::make(family, convention, dim, charge, 1.0);
    const RadialProblem problem =
        RadialProblem::make(dim, angular_momentum, model);
    row.classical = classical_minimum(problem);
    if (row.classical.exists) {
      row.harmonic_estimate = row.classical.u_min + 0.5 * row.classical.omega;
    }
    if (family == Family::Newtonian && angular_momentum == 0) {
      row.predicted_ratio = static_cast<double>(dim - 3) / (dim - 1);
    }

    const bool bottomless =
        family == Family::DimensionConsistent && dim >= 4;
    if (bottomless) {
      // No spectrum to report; run the grid-refinement diagnostic and let the
      // classification be the row's payload.
      const double reach = 1.0 + angular_momentum + 0.5 * dim;
      const double r_max = 15.0 * reach * reach / charge;
      const GridSpec base = GridSpec::make(r_max / 20001.0, r_max, 20000);
      row.classification =
          collapse_diagnostic(problem, base, 4).classification;
      return;
    }

    const SolveOutcome outcome =
        solve_states(problem, default_grid(problem, 1), 1);
    if (!outcome.states.empty()) {
      row.numeric_ground = outcome.states.front().energy;
      if (row.classical.exists && row.classical.u_min != 0.0) {
        row.ratio = *row.numeric_ground / row.classical.u_min;
      }
    }
  });
  return rows;
}

}  // namespace ddatom
