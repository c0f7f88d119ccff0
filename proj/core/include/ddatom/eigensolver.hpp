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

#ifndef DDATOM_EIGENSOLVER_HPP
#define DDATOM_EIGENSOLVER_HPP

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ddatom/grid.hpp"
#include "ddatom/radial.hpp"

namespace ddatom {

// Symmetric tridiagonal discretization of -1/2 d^2/dr^2 + U_eff.
//
// Standard scheme (all regular channels): nodes r_i = r_min + i h,
// diagonal 1/h^2 + U_eff(r_i), off-diagonal -1/(2 h^2).
//
// ConservativeHalfMesh (marginal channels, c = -1/8 exactly, wall at 0):
// nodes r_i = (i - 1/2) h with h = r_max/(n + 1/2). Substituting u = sqrt(r) R
// and discretizing the resulting flux form absorbs the critical -1/(8 r^2)
// exactly into the stencil: diagonal 1/h^2 + [U_eff(r_i) + 1/(8 r_i^2)],
// off-diagonal -(1/(2 h^2)) i/sqrt(i^2 - 1/4). The plain stencil converges
// only logarithmically at the critical strength; this one restores O(h^2).
struct TridiagonalOperator {
  enum class Scheme { Standard, ConservativeHalfMesh };

  std::vector<double> diagonal;
  std::vector<double> off_diagonal;
  GridSpec grid;
  Scheme scheme = Scheme::Standard;

  int size() const { return static_cast<int>(diagonal.size()); }
  double spacing() const;
  double node(int i) const;  // i in [1, size()]
};

struct BoundState {
  double energy = 0.0;  // Hartree; Richardson-extrapolated when `extrapolated`
  int node_count = 0;
  std::vector<double> wavefunction;  // finest-grid u, normalized h sum u^2 = 1
  GridSpec grid;                     // finest ladder rung
  TridiagonalOperator::Scheme scheme = TridiagonalOperator::Scheme::Standard;
  bool extrapolated = false;
  std::optional<double> estimated_order;  // empty when unreliable / not done
  double cross_check_defect = 0.0;        // Numerov defect at the finest rung
};

struct SolveOptions {
  bool extrapolate = true;
  int ladder_rungs = 3;            // h, h/2, h/4; marginal channels add one
  double numerov_check_tol = 1e-5; // floor of the cross-check threshold
};

struct SolveOutcome {
  std::vector<BoundState> states;  // bound subset, ascending energy
  int requested = 0;
  int unbound_discarded = 0;       // levels with E >= 0 dropped (decaying V)
};

struct CollapseReport {
  enum class Classification { Stable, NoBoundStates, Collapse };
  std::vector<std::pair<GridSpec, double>> ladder;  // (grid, ground energy)
  Classification classification = Classification::Stable;
};

const char* collapse_classification_name(CollapseReport::Classification c);

// Thrown when a spectrum is requested for a problem whose energy functional
// is unbounded below. collapse_diagnostic accepts such problems and shows the
// divergence instead.
class SupercriticalError : public std::runtime_error {
 public:
  explicit SupercriticalError(const std::string& what)
      : std::runtime_error(what) {}
};

TridiagonalOperator discretize(const RadialProblem& problem,
                               const GridSpec& grid);

// Number of eigenvalues strictly below lambda: negative-pivot count of the
// shifted LDL^T factorization, with the conventional tiny-pivot guard.
int count_below(const TridiagonalOperator& op, double lambda);

// The `count` smallest eigenvalues, each bisected to absolute width
// 1e-12 * max(1, |lambda|). Deterministic; ascending.
std::vector<double> eigen_lowest(const TridiagonalOperator& op, int count);

// Normalized eigenvector (h sum u^2 = 1) by inverse iteration from an
// all-ones seed; at most 50 iterations to residual 1e-8 * ||op||_inf. Sign
// fixed so the first nonzero component is positive.
std::vector<double> eigenfunction(const TridiagonalOperator& op, double energy);

// Interior sign changes of a grid function; an exact zero pairs with the
// following sign so it is counted once.
int count_nodes(const std::vector<double>& u);

struct ShootResult {
  int node_count = 0;
  double matching_defect = 0.0;  // energy units, ~ -(E - E_shoot); 0 at eigenvalues
};

// Numerov double-shot on the same lattice as discretize(): outward from the
// origin (power-law or, on marginal channels, Frobenius-series seeding),
// inward from the outer wall, log-derivative mismatch at the matching node
// nearest the outer classical turning point (midpoint fallback).
ShootResult shoot_numerov(const RadialProblem& problem, const GridSpec& grid,
                          double energy);

// Same integrator over an arbitrary effective potential on a Standard-scheme
// lattice, seeded with u ~ r^seed_exponent at the first two nodes. This is
// the validation surface for patched-in potentials in tests.
ShootResult shoot_numerov_potential(const std::function<double(double)>& u_eff,
                                    const GridSpec& grid, double energy,
                                    double seed_exponent);

struct Extrapolation {
  double energy = 0.0;
  std::optional<double> order;  // empty: non-contracting data, energy = finest
};

// Fit E(h) = E0 + C h^p through the last three of >= 3 pairs with h halving.
Extrapolation richardson_extrapolate(
    std::span<const std::pair<double, double>> h_energy_pairs);

// Default mesh for a problem: wall at 0, 20000 interior points, and
// r_max = 15 (n_states + l + D/2)^2 / Z for decaying potentials. Confining
// potentials double r_max until V(r_max) clears a coarse estimate of the
// highest requested level by 5 Hartree.
GridSpec default_grid(const RadialProblem& problem, int n_states);

// Lowest n_states bound states on the rung ladder {h, h/2, h/4} built over
// `grid` (which is the coarsest rung). Levels with E >= 0 are dropped for
// potentials with a dissociation threshold. Every returned state is
// cross-checked against the Numerov defect at the finest rung; the threshold
// adapts to the observed ladder spacing so it tracks the actual O(h^2) error.
// Throws SupercriticalError when classify_stability says the spectrum is
// unbounded below.
SolveOutcome solve_states(const RadialProblem& problem, const GridSpec& grid,
                          int n_states, const SolveOptions& options = {});

// Ground-state energy on a ladder of rungs >= 4 grids where r_min halves each
// rung (n doubles to keep h/r_min fixed; r_max stays). Classification:
//   Collapse       every rung ground negative and at least 2x deeper than the
//                  previous one,
//   NoBoundStates  no rung has a negative level,
//   Stable         anything else (the energy settles).
// base_grid.r_min must be positive.
CollapseReport collapse_diagnostic(const RadialProblem& problem,
                                   const GridSpec& base_grid, int rungs);

// |E_sturm - E_numerov| per state on one shared lattice, both routes run in
// extended (80-bit) precision. At the mesh densities where the two
// discretizations agree to 1e-8, double-precision eigenvalues carry roundoff
// of order eps/h^2 which would mask the comparison entirely; long double
// pushes that floor to ~1e-10.
std::vector<double> dual_method_gap(const RadialProblem& problem,
                                    const GridSpec& grid, int n_states);

}  // namespace ddatom

#endif  // DDATOM_EIGENSOLVER_HPP
