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

#include "ddatom/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ddatom/potential.hpp"

namespace ddatom {

GridSpec GridSpec::make(double r_min, double r_max, int interior_points) {
  if (!(r_min >= 0.0) || !(r_max > r_min)) {
    throw std::invalid_argument("GridSpec: need 0 <= r_min < r_max");
  }
  if (interior_points < 3) {
    throw std::invalid_argument("GridSpec: need at least 3 interior points");
  }
  return GridSpec{r_min, r_max, interior_points};
}

double TridiagonalOperator::spacing() const {
  if (scheme == Scheme::Standard) return grid.spacing();
  return (grid.r_max - grid.r_min) / (size() + 0.5);
}

double TridiagonalOperator::node(int i) const {
  if (scheme == Scheme::Standard) return grid.node(i);
  return grid.r_min + (i - 0.5) * spacing();
}

const char* collapse_classification_name(CollapseReport::Classification c) {
  switch (c) {
    case CollapseReport::Classification::Stable:
      return "Stable";
    case CollapseReport::Classification::NoBoundStates:
      return "NoBoundStates";
    case CollapseReport::Classification::Collapse:
      return "Collapse";
  }
  return "Unknown";
}

namespace {

void validate_grid(const GridSpec& g) {
  if (!(g.r_min >= 0.0) || !(g.r_max > g.r_min) || g.interior_points < 3) {
    throw std::invalid_argument("invalid GridSpec");
  }
}

bool half_mesh_scheme(const RadialProblem& problem, const GridSpec& grid) {
  return grid.r_min == 0.0 &&
         classify_stability(problem).kind == StabilityKind::Marginal;
}

// U_eff minus the critical -1/(8 r^2) that the conservative stencil absorbs,
// computed without subtracting the two singular terms numerically. Only two
// channels are ever marginal: (l=0, D=2), where the remainder is just V, and
// the consistent D=4 potential at critical charge, where U_eff is the
// critical inverse square in its entirety and the remainder vanishes.
double marginal_residual_potential(const RadialProblem& problem, double r) {
  if (problem.potential.family == Family::DimensionConsistent &&
      problem.dimension == 4) {
    return 0.0;
  }
  return potential_energy(problem.potential, r);
}

// Net inverse-square coefficient for small-r asymptotics (power-law seeding).
double inverse_square_coefficient(const RadialProblem& problem) {
  const StabilityClass s = classify_stability(problem);
  if (s.net_inverse_square_coefficient) {
    return *s.net_inverse_square_coefficient;
  }
  throw SupercriticalError(
      "channel has no regular small-r solution (supercritical)");
}

// ---------------------------------------------------------------------------
// Lattice shared by the matrix and the shooting integrator. Standard: nodes
// r_k = r_min + k h, h = span/(n+1), walls at k = 0 and k = n+1. Half mesh:
// r_k = r_min + (k - 1/2) h, h = span/(n + 1/2), wall only at k = n+1; the
// origin falls between k = 0 and k = 1.
// ---------------------------------------------------------------------------

template <typename Real>
struct Mesh {
  Real h = Real(0);
  Real r_min = Real(0);
  int n = 0;
  bool half = false;

  Real node(int k) const {
    const Real i = half ? Real(k) - Real(0.5) : Real(k);
    return r_min + i * h;
  }
};

template <typename Real>
Mesh<Real> make_mesh(const GridSpec& g, bool half) {
  Mesh<Real> m;
  m.n = g.interior_points;
  m.half = half;
  m.r_min = Real(g.r_min);
  const Real span = Real(g.r_max) - Real(g.r_min);
  m.h = span / (Real(m.n) + (half ? Real(0.5) : Real(1)));
  return m;
}

template <typename Real>
void build_tridiagonal(const RadialProblem& problem, const GridSpec& grid,
                       bool half, std::vector<Real>& diag,
                       std::vector<Real>& off) {
  const Mesh<Real> mesh = make_mesh<Real>(grid, half);
  const int n = mesh.n;
  const Real inv_h2 = Real(1) / (mesh.h * mesh.h);
  diag.resize(n);
  off.assign(n > 0 ? n - 1 : 0, -inv_h2 / 2);
  if (!half) {
    for (int i = 0; i < n; ++i) {
      const double r = static_cast<double>(mesh.node(i + 1));
      diag[i] = inv_h2 + Real(effective_potential(problem, r));
    }
  } else {
    for (int i = 0; i < n; ++i) {
      const double r = static_cast<double>(mesh.node(i + 1));
      diag[i] = inv_h2 + Real(marginal_residual_potential(problem, r));
    }
    for (int i = 1; i < n; ++i) {
      const Real fi = Real(i);
      off[i - 1] = -(inv_h2 / 2) * fi / std::sqrt(fi * fi - Real(0.25));
    }
  }
}

// ---------------------------------------------------------------------------
// Sturm machinery, templated so the dual-method check can run it in extended
// precision.
// ---------------------------------------------------------------------------

template <typename Real>
Real sturm_pivmin(const std::vector<Real>& off) {
  Real emax2 = Real(1);
  for (const Real x : off) emax2 = std::max(emax2, x * x);
  constexpr Real safe = std::numeric_limits<Real>::min() /
                        std::numeric_limits<Real>::epsilon();
  return emax2 * safe;
}

template <typename Real>
int negative_pivots(const std::vector<Real>& diag, const std::vector<Real>& off,
                    Real lambda, Real pivmin) {
  const int n = static_cast<int>(diag.size());
  int count = 0;
  Real q = diag[0] - lambda;
  if (std::fabs(q) < pivmin) q = -pivmin;
  if (q < Real(0)) ++count;
  for (int i = 1; i < n; ++i) {
    q = diag[i] - lambda - off[i - 1] * off[i - 1] / q;
    if (std::fabs(q) < pivmin) q = -pivmin;
    if (q < Real(0)) ++count;
  }
  return count;
}

template <typename Real>
std::pair<Real, Real> gershgorin_bounds(const std::vector<Real>& diag,
                                        const std::vector<Real>& off) {
  const int n = static_cast<int>(diag.size());
  Real lo = diag[0], hi = diag[0];
  for (int i = 0; i < n; ++i) {
    Real radius = Real(0);
    if (i > 0) radius += std::fabs(off[i - 1]);
    if (i < n - 1) radius += std::fabs(off[i]);
    lo = std::min(lo, diag[i] - radius);
    hi = std::max(hi, diag[i] + radius);
  }
  return {lo - Real(1), hi + Real(1)};
}

// k-th smallest eigenvalue (0-based) to interval width
// width_scale * max(1, |lambda|).
template <typename Real>
Real bisect_kth(const std::vector<Real>& diag, const std::vector<Real>& off,
                int k, Real width_scale) {
  const Real pivmin = sturm_pivmin(off);
  auto [lo, hi] = gershgorin_bounds(diag, off);
  Real mid = (lo + hi) / 2;
  for (int iter = 0; iter < 300; ++iter) {
    mid = (lo + hi) / 2;
    if (hi - lo <= width_scale * std::max(Real(1), std::fabs(mid))) break;
    if (negative_pivots(diag, off, mid, pivmin) >= k + 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return mid;
}

// ---------------------------------------------------------------------------
// Frobenius series seeding for marginal channels. With c = -1/8 the indicial
// exponent 1/2 is a double root, so the regular (Friedrichs) solution is
//
//   u(r) = sqrt(r) * sum_k r^k P_k(L),   L = ln(r/r0),  P_0 = 1,
//
// where each P_k is a polynomial in L obtained from
//
//   k^2 P_k + 2k P_k' + P_k'' = RHS_k,
//
// with RHS_k = 2 s L P_{k-2} - 2E P_{k-2} for the log potential V = s L,
// RHS_k = -2Z P_{k-1} - 2E P_{k-2} for V = -Z/r, and RHS_k = -2E P_{k-2}
// when the potential is purely inverse-square. A plain power-law start loses
// the log content of the solution and stalls the shooting accuracy.
// ---------------------------------------------------------------------------

enum class SeriesKind { kLogSlope, kCoulombLike, kPureInverseSquare };

template <typename Real>
class FrobeniusSeries {
 public:
  FrobeniusSeries(SeriesKind kind, Real strength, Real energy, Real r0,
                  int kmax)
      : r0_(r0) {
    p_.assign(kmax + 1, {});
    p_[0] = {Real(1)};
    for (int k = 1; k <= kmax; ++k) {
      std::vector<Real> rhs;
      auto add = [&rhs](const std::vector<Real>& src, Real factor, int shift) {
        if (factor == Real(0)) return;
        if (rhs.size() < src.size() + shift) {
          rhs.resize(src.size() + shift, Real(0));
        }
        for (std::size_t j = 0; j < src.size(); ++j) {
          rhs[j + shift] += factor * src[j];
        }
      };
      switch (kind) {
        case SeriesKind::kLogSlope:
          if (k >= 2) {
            add(p_[k - 2], 2 * strength, 1);
            add(p_[k - 2], -2 * energy, 0);
          }
          break;
        case SeriesKind::kCoulombLike:
          add(p_[k - 1], -2 * strength, 0);
          if (k >= 2) add(p_[k - 2], -2 * energy, 0);
          break;
        case SeriesKind::kPureInverseSquare:
          if (k >= 2) add(p_[k - 2], -2 * energy, 0);
          break;
      }
      if (rhs.empty()) {
        p_[k] = {Real(0)};
        continue;
      }
      const int deg = static_cast<int>(rhs.size()) - 1;
      std::vector<Real> beta(deg + 3, Real(0));
      const Real k2 = Real(k) * Real(k);
      for (int j = deg; j >= 0; --j) {
        beta[j] = (rhs[j] - 2 * Real(k) * Real(j + 1) * beta[j + 1] -
                   Real(j + 1) * Real(j + 2) * beta[j + 2]) /
                  k2;
      }
      beta.resize(deg + 1);
      p_[k] = std::move(beta);
    }
  }

  // Value of u at r, plus the magnitude of the highest retained term as a
  // truncation probe.
  std::pair<Real, Real> eval(Real r) const {
    const Real ell = std::log(r / r0_);
    Real total = Real(0);
    Real last = Real(0);
    Real rk = Real(1);
    for (std::size_t k = 0; k < p_.size(); ++k) {
      Real pk = Real(0);
      for (auto it = p_[k].rbegin(); it != p_[k].rend(); ++it) {
        pk = pk * ell + *it;
      }
      const Real term = pk * rk;
      total += term;
      if (k + 1 == p_.size()) last = std::fabs(term);
      rk *= r;
    }
    const Real root = std::sqrt(r);
    return {root * total, root * last};
  }

 private:
  std::vector<std::vector<Real>> p_;
  Real r0_;
};

// ---------------------------------------------------------------------------
// Numerov double-shot kernel on a prepared lattice. f[k] = 2(U(r_k) - E) for
// k = 0..n+1; outward sweep seeded at nodes j0, j0+1, inward sweep from the
// outer wall, log-derivative mismatch at the match node m. The returned
// defect is scaled so that d(defect)/dE is about -1 near an eigenvalue.
// ---------------------------------------------------------------------------

template <typename Real>
struct ShootOutput {
  int node_count = 0;
  Real defect = Real(0);
};

template <typename Real>
ShootOutput<Real> numerov_two_sided(const std::vector<Real>& f, Real h, int n,
                                    int m, int j0, Real seed1, Real seed2) {
  constexpr Real kBig = Real(1e250);
  constexpr Real kShrink = Real(1e-250);
  const Real c = h * h / 12;

  std::vector<Real> u_left(n + 2, Real(0));
  u_left[j0] = seed1;
  u_left[j0 + 1] = seed2;
  for (int k = j0 + 2; k <= m + 1; ++k) {
    const Real num = (2 + 10 * c * f[k - 1]) * u_left[k - 1] -
                     (1 - c * f[k - 2]) * u_left[k - 2];
    u_left[k] = num / (1 - c * f[k]);
    if (std::fabs(u_left[k]) > kBig) {
      for (int j = j0; j <= k; ++j) u_left[j] *= kShrink;
    }
  }

  std::vector<Real> u_right(n + 2, Real(0));
  u_right[n + 1] = Real(0);
  u_right[n] = Real(1e-10);
  for (int k = n - 1; k >= m - 1; --k) {
    const Real num = (2 + 10 * c * f[k + 1]) * u_right[k + 1] -
                     (1 - c * f[k + 2]) * u_right[k + 2];
    u_right[k] = num / (1 - c * f[k]);
    if (std::fabs(u_right[k]) > kBig) {
      for (int j = k; j <= n + 1; ++j) u_right[j] *= kShrink;
    }
  }

  ShootOutput<Real> out;
  if (u_left[m] == Real(0) || u_right[m] == Real(0)) {
    out.defect = std::numeric_limits<Real>::quiet_NaN();
    return out;
  }
  const Real scale = u_left[m] / u_right[m];
  const Real d_left = (u_left[m + 1] - u_left[m - 1]) / (2 * h);
  const Real d_right = scale * (u_right[m + 1] - u_right[m - 1]) / (2 * h);

  Real total = Real(0);
  int last_sign = 0;
  for (int k = 1; k <= n; ++k) {
    const Real v = k <= m ? u_left[k] : scale * u_right[k];
    total += v * v;
    const int sign = v > Real(0) ? 1 : (v < Real(0) ? -1 : 0);
    if (sign != 0) {
      if (last_sign != 0 && sign != last_sign) ++out.node_count;
      last_sign = sign;
    }
  }
  out.defect = Real(0.5) * u_left[m] * (d_left - d_right) / (h * total);
  return out;
}

// Precomputed U_eff plus seeding strategy, reusable across energies (the
// dual-method check evaluates the defect at many trial energies).
template <typename Real>
struct ShootContext {
  Mesh<Real> mesh;
  std::vector<Real> u_eff;  // nodes 0..n+1; entries at r <= 0 are unused
  bool wall_seed = false;   // r_min > 0: hard wall, u(r_min) = 0
  bool series_seed = false; // marginal channel, Frobenius start
  SeriesKind kind = SeriesKind::kPureInverseSquare;
  Real strength = Real(0);
  Real r0 = Real(1);
  Real exponent = Real(1);  // power-law start otherwise
  Real coulomb = Real(0);   // coefficient of -1/r in V, for the seed correction

  static ShootContext build(const RadialProblem& problem,
                            const GridSpec& grid) {
    validate_grid(grid);
    if (grid.interior_points < 8) {
      throw std::invalid_argument("shoot_numerov: grid too coarse");
    }
    ShootContext ctx;
    const bool half = half_mesh_scheme(problem, grid);
    ctx.mesh = make_mesh<Real>(grid, half);
    ctx.u_eff.resize(ctx.mesh.n + 2);
    for (int k = 0; k <= ctx.mesh.n + 1; ++k) {
      const double r = static_cast<double>(ctx.mesh.node(k));
      ctx.u_eff[k] = r > 0.0 ? Real(effective_potential(problem, r)) : Real(0);
    }
    if (grid.r_min > 0.0) {
      ctx.wall_seed = true;
    } else if (half) {
      ctx.series_seed = true;
      const PotentialModel& pm = problem.potential;
      if (pm.family == Family::DimensionConsistent && problem.dimension == 4) {
        ctx.kind = SeriesKind::kPureInverseSquare;
      } else if (pm.family == Family::Newtonian) {
        ctx.kind = SeriesKind::kCoulombLike;
        ctx.strength = Real(pm.charge);
      } else {
        ctx.kind = SeriesKind::kLogSlope;
        ctx.strength = Real(source_strength(pm) / (2.0 * std::numbers::pi));
      }
      ctx.r0 = Real(pm.cutoff);
    } else {
      const double c2 = inverse_square_coefficient(problem);
      const double arg = 0.25 + 2.0 * c2;
      if (arg < 0.0) {
        throw SupercriticalError(
            "shoot_numerov: no regular small-r solution (supercritical)");
      }
      ctx.exponent = Real(0.5 + std::sqrt(arg));
      const PotentialModel& pm = problem.potential;
      if (pm.family == Family::Newtonian ||
          (pm.family == Family::DimensionConsistent &&
           problem.dimension == 3)) {
        ctx.coulomb = Real(pm.charge);
      }
    }
    return ctx;
  }

  ShootOutput<Real> shoot(Real energy) const {
    const int n = mesh.n;
    std::vector<Real> f(n + 2);
    for (int k = 0; k <= n + 1; ++k) f[k] = 2 * (u_eff[k] - energy);

    // Match at the last node inside the classically allowed region.
    int m = -1;
    for (int k = 1; k <= n; ++k) {
      if (u_eff[k] <= energy) m = k;
    }
    if (m < 0) m = n / 2;
    m = std::clamp(m, 3, n - 3);

    int j0 = 0;
    Real s1 = Real(0), s2 = Real(1);
    if (wall_seed) {
      // defaults above: u = 0 at the wall node, arbitrary scale at the next
    } else if (series_seed) {
      const FrobeniusSeries<Real> series(kind, strength, energy, r0, 12);
      // Pick a seed radius where truncation is negligible; 0.1 almost always
      // qualifies, shrink otherwise.
      Real rs = Real(0.1);
      for (int iter = 0; iter < 60; ++iter) {
        const auto [value, last] = series.eval(rs);
        if (last <= Real(1e-13) * std::fabs(value)) break;
        if (rs * Real(0.5) < 4 * mesh.h) break;
        rs *= Real(0.5);
      }
      j0 = std::max(1, static_cast<int>(rs / mesh.h));
      j0 = std::min(j0, m - 2);
      s1 = series.eval(mesh.node(j0)).first;
      s2 = series.eval(mesh.node(j0 + 1)).first;
    } else {
      // Regular power-law start with the first series correction,
      // u = r^s (1 - Z_c r / s), where Z_c is the attractive-Coulomb
      // coefficient of the potential. The bare r^s seed leaves an O(h^2)
      // bias in the matching defect; the corrected seed reduces it to
      // O(h^3). Skip nodes where the singular term would overwhelm the
      // stencil (h^2 |f| > 1 for large centrifugal K).
      j0 = 1;
      while (j0 < m - 2 && mesh.h * mesh.h * std::fabs(f[j0]) > Real(1)) ++j0;
      const Real b = -coulomb / exponent;
      const Real r1 = mesh.node(j0);
      const Real r2 = mesh.node(j0 + 1);
      s1 = std::pow(r1, exponent) * (1 + b * r1);
      s2 = std::pow(r2, exponent) * (1 + b * r2);
    }
    return numerov_two_sided<Real>(f, mesh.h, n, m, j0, s1, s2);
  }
};

// Bracket-and-bisect the defect zero nearest `guess`. The defect decreases
// through zero as E crosses an eigenvalue, with slope about -1.
template <typename Real>
Real defect_zero_near(const ShootContext<Real>& ctx, Real guess,
                      Real width_scale) {
  Real span = std::max(Real(1e-9), std::fabs(guess) * Real(1e-9));
  Real lo = guess - span, hi = guess + span;
  Real f_lo = ctx.shoot(lo).defect;
  Real f_hi = ctx.shoot(hi).defect;
  int tries = 0;
  while (!(f_lo * f_hi <= Real(0)) && tries < 60) {
    span *= 2;
    lo = guess - span;
    hi = guess + span;
    f_lo = ctx.shoot(lo).defect;
    f_hi = ctx.shoot(hi).defect;
    ++tries;
  }
  if (!(f_lo * f_hi <= Real(0))) {
    throw std::runtime_error(
        "dual_method_gap: failed to bracket a Numerov defect zero");
  }
  for (int iter = 0; iter < 200; ++iter) {
    const Real mid = (lo + hi) / 2;
    if (hi - lo <= width_scale * std::max(Real(1), std::fabs(mid))) {
      return mid;
    }
    const Real f_mid = ctx.shoot(mid).defect;
    if (f_mid == Real(0)) return mid;
    if (f_lo * f_mid <= Real(0)) {
      hi = mid;
    } else {
      lo = mid;
      f_lo = f_mid;
    }
  }
  return (lo + hi) / 2;
}

}  // namespace

TridiagonalOperator discretize(const RadialProblem& problem,
                               const GridSpec& grid) {
  validate_grid(grid);
  TridiagonalOperator op;
  op.grid = grid;
  const bool half = half_mesh_scheme(problem, grid);
  op.scheme = half ? TridiagonalOperator::Scheme::ConservativeHalfMesh
                   : TridiagonalOperator::Scheme::Standard;
  build_tridiagonal<double>(problem, grid, half, op.diagonal, op.off_diagonal);
  for (const double d : op.diagonal) {
    if (!std::isfinite(d)) {
      throw std::invalid_argument(
          "discretize: non-finite effective potential at a grid node");
    }
  }
  return op;
}

int count_below(const TridiagonalOperator& op, double lambda) {
  return negative_pivots<double>(op.diagonal, op.off_diagonal, lambda,
                                 sturm_pivmin<double>(op.off_diagonal));
}

std::vector<double> eigen_lowest(const TridiagonalOperator& op, int count) {
  if (count < 1 || count > op.size()) {
    throw std::invalid_argument("eigen_lowest: count out of range");
  }
  std::vector<double> out(count);
  for (int k = 0; k < count; ++k) {
    out[k] = bisect_kth<double>(op.diagonal, op.off_diagonal, k, 1e-12);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> eigenfunction(const TridiagonalOperator& op,
                                  double energy) {
  const int n = op.size();
  const std::vector<double>& diag = op.diagonal;
  const std::vector<double>& off = op.off_diagonal;
  if (n < 2) throw std::invalid_argument("eigenfunction: operator too small");

  double op_norm = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = std::fabs(diag[i]);
    if (i > 0) row += std::fabs(off[i - 1]);
    if (i < n - 1) row += std::fabs(off[i]);
    op_norm = std::max(op_norm, row);
  }
  const double tiny = std::numeric_limits<double>::epsilon() * op_norm;

  // LU factorization of op - E with partial pivoting (tridiagonal; a second
  // superdiagonal fills in under row swaps).
  std::vector<double> dd(n), dl(n - 1), du(n - 1), du2(n > 2 ? n - 2 : 0);
  std::vector<char> swapped(n - 1, 0);
  for (int i = 0; i < n; ++i) dd[i] = diag[i] - energy;
  for (int i = 0; i + 1 < n; ++i) dl[i] = du[i] = off[i];
  for (int i = 0; i + 1 < n; ++i) {
    if (std::fabs(dd[i]) >= std::fabs(dl[i])) {
      if (dd[i] == 0.0) dd[i] = tiny;
      const double fact = dl[i] / dd[i];
      dl[i] = fact;
      dd[i + 1] -= fact * du[i];
      if (i + 2 < n) du2[i] = 0.0;
    } else {
      const double fact = dd[i] / dl[i];
      dd[i] = dl[i];
      dl[i] = fact;
      const double temp = du[i];
      du[i] = dd[i + 1];
      dd[i + 1] = temp - fact * dd[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du[i + 1];
      }
      swapped[i] = 1;
    }
  }
  if (dd[n - 1] == 0.0) dd[n - 1] = tiny;

  std::vector<double> x(n, 1.0), b(n);
  double residual = std::numeric_limits<double>::infinity();
  const double target = 1e-8 * op_norm;
  for (int iter = 0; iter < 50; ++iter) {
    b = x;
    for (int i = 0; i + 1 < n; ++i) {
      if (!swapped[i]) {
        b[i + 1] -= dl[i] * b[i];
      } else {
        const double temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl[i] * b[i];
      }
    }
    b[n - 1] /= dd[n - 1];
    b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / dd[n - 2];
    for (int i = n - 3; i >= 0; --i) {
      b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / dd[i];
    }
    long double sum = 0.0L;
    for (const double v : b) sum += static_cast<long double>(v) * v;
    const double norm = std::sqrt(static_cast<double>(sum));
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw std::runtime_error("eigenfunction: inverse iteration broke down");
    }
    for (double& v : b) v /= norm;
    x = b;
    residual = 0.0;
    for (int i = 0; i < n; ++i) {
      double row = (diag[i] - energy) * x[i];
      if (i > 0) row += off[i - 1] * x[i - 1];
      if (i < n - 1) row += off[i] * x[i + 1];
      residual = std::max(residual, std::fabs(row));
    }
    // Never stop after the first solve: the all-ones seed leaves a remnant
    // of about |lambda - lambda_exact| in the classically forbidden tails,
    // and one more pass pushes it below roundoff.
    if (iter >= 1 && residual <= target) break;
  }
  if (residual > target) {
    throw std::runtime_error(
        "eigenfunction: inverse iteration did not converge, residual " +
        std::to_string(residual));
  }

  // Inverse iteration cannot resolve amplitudes far below the largest entry;
  // deep-tail values at that level carry arbitrary signs. Flush the decayed
  // stretches adjacent to either boundary to exact zeros so node counts
  // reflect resolved structure only. Interior values are never touched.
  double peak = 0.0;
  for (const double v : x) peak = std::max(peak, std::fabs(v));
  const double floor = 1e-11 * peak;
  for (int i = n - 1; i >= 0 && std::fabs(x[i]) < floor; --i) x[i] = 0.0;
  for (int i = 0; i < n && std::fabs(x[i]) < floor; ++i) x[i] = 0.0;

  for (const double v : x) {
    if (v != 0.0) {
      if (v < 0.0) {
        for (double& w : x) w = -w;
      }
      break;
    }
  }

  long double sum = 0.0L;
  for (const double v : x) sum += static_cast<long double>(v) * v;
  const double scale =
      1.0 / std::sqrt(op.spacing() * static_cast<double>(sum));
  for (double& v : x) v *= scale;
  return x;
}

int count_nodes(const std::vector<double>& u) {
  int count = 0;
  int last_sign = 0;
  for (const double v : u) {
    const int sign = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) ++count;
    last_sign = sign;
  }
  return count;
}

ShootResult shoot_numerov(const RadialProblem& problem, const GridSpec& grid,
                          double energy) {
  const auto ctx = ShootContext<double>::build(problem, grid);
  const auto out = ctx.shoot(energy);
  return ShootResult{out.node_count, out.defect};
}

ShootResult shoot_numerov_potential(const std::function<double(double)>& u_eff,
                                    const GridSpec& grid, double energy,
                                    double seed_exponent) {
  validate_grid(grid);
  if (grid.interior_points < 8) {
    throw std::invalid_argument("shoot_numerov_potential: grid too coarse");
  }
  const Mesh<double> mesh = make_mesh<double>(grid, false);
  const int n = mesh.n;
  std::vector<double> f(n + 2, 0.0);
  for (int k = 1; k <= n + 1; ++k) {
    f[k] = 2.0 * (u_eff(mesh.node(k)) - energy);
  }
  if (grid.r_min > 0.0) f[0] = 2.0 * (u_eff(grid.r_min) - energy);

  int m = -1;
  for (int k = 1; k <= n; ++k) {
    if (f[k] <= 0.0) m = k;
  }
  if (m < 0) m = n / 2;
  m = std::clamp(m, 3, n - 3);

  int j0 = 1;
  while (j0 < m - 2 && mesh.h * mesh.h * std::fabs(f[j0]) > 1.0) ++j0;
  const double s1 = std::pow(mesh.node(j0), seed_exponent);
  const double s2 = std::pow(mesh.node(j0 + 1), seed_exponent);
  const auto out = numerov_two_sided<double>(f, mesh.h, n, m, j0, s1, s2);
  return ShootResult{out.node_count, out.defect};
}

Extrapolation richardson_extrapolate(
    std::span<const std::pair<double, double>> h_energy_pairs) {
  if (h_energy_pairs.size() < 3) {
    throw std::invalid_argument("richardson_extrapolate: need >= 3 rungs");
  }
  const auto& [h1, e1] = h_energy_pairs[h_energy_pairs.size() - 3];
  const auto& [h2, e2] = h_energy_pairs[h_energy_pairs.size() - 2];
  const auto& [h3, e3] = h_energy_pairs[h_energy_pairs.size() - 1];
  if (std::fabs(h1 / h2 - 2.0) > 0.05 || std::fabs(h2 / h3 - 2.0) > 0.05) {
    throw std::invalid_argument(
        "richardson_extrapolate: spacings must halve per rung");
  }
  Extrapolation out;
  const double d1 = e1 - e2;
  const double d2 = e2 - e3;
  // A clean h^p decay has the increments shrinking with a fixed sign; anything
  // else and the fit would extrapolate noise, so report the finest value.
  if (d1 * d2 <= 0.0 || std::fabs(d2) >= std::fabs(d1)) {
    out.energy = e3;
    return out;
  }
  out.order = std::log2(d1 / d2);
  out.energy = e3 - d2 * d2 / (d1 - d2);
  return out;
}

GridSpec default_grid(const RadialProblem& problem, int n_states) {
  if (n_states < 1) {
    throw std::invalid_argument("default_grid: n_states must be >= 1");
  }
  const double z = problem.potential.charge;
  const double reach = n_states + problem.angular_momentum +
                       0.5 * problem.dimension;
  double r_max = 15.0 * reach * reach / z;
  if (is_confining(problem.potential)) {
    // Grow the box until the confining wall clears a coarse estimate of the
    // highest requested level; the log potential needs a few doublings.
    for (int iter = 0; iter < 60; ++iter) {
      const TridiagonalOperator coarse =
          discretize(problem, GridSpec::make(0.0, r_max, 4000));
      const double top = eigen_lowest(coarse, n_states).back();
      if (potential_energy(problem.potential, r_max) >= top + 5.0) break;
      r_max *= 2.0;
    }
  }
  return GridSpec::make(0.0, r_max, 20000);
}

SolveOutcome solve_states(const RadialProblem& problem, const GridSpec& grid,
                          int n_states, const SolveOptions& options) {
  if (n_states < 1) {
    throw std::invalid_argument("solve_states: n_states must be >= 1");
  }
  validate_grid(grid);
  if (classify_stability(problem).kind == StabilityKind::Supercritical) {
    throw SupercriticalError(
        "solve_states: the spectrum is unbounded below for this channel; "
        "run collapse_diagnostic to see the divergence");
  }

  const bool half = half_mesh_scheme(problem, grid);
  int rungs = std::max(1, options.ladder_rungs);
  if (options.extrapolate && half) {
    ++rungs;  // marginal channels converge more slowly; buy one extra halving
  }
  if (!options.extrapolate) rungs = 1;

  std::vector<GridSpec> grids;
  for (int j = 0, n = grid.interior_points; j < rungs; ++j, n = 2 * n + 1) {
    grids.push_back(GridSpec::make(grid.r_min, grid.r_max, n));
  }

  std::vector<std::vector<double>> levels(rungs);
  TridiagonalOperator finest;
  for (int j = 0; j < rungs; ++j) {
    TridiagonalOperator op = discretize(problem, grids[j]);
    levels[j] = eigen_lowest(op, n_states);
    if (j == rungs - 1) finest = std::move(op);
  }

  const bool extrapolate = options.extrapolate && rungs >= 3;
  const bool decaying = !is_confining(problem.potential);

  SolveOutcome outcome;
  outcome.requested = n_states;
  for (int k = 0; k < n_states; ++k) {
    Extrapolation fit;
    if (extrapolate) {
      std::vector<std::pair<double, double>> pairs;
      for (int j = 0; j < rungs; ++j) {
        const double hj = half
                              ? (grids[j].r_max - grids[j].r_min) /
                                    (grids[j].interior_points + 0.5)
                              : grids[j].spacing();
        pairs.emplace_back(hj, levels[j][k]);
      }
      fit = richardson_extrapolate(pairs);
    } else {
      fit.energy = levels[rungs - 1][k];
    }

    if (decaying && fit.energy >= 0.0) {
      ++outcome.unbound_discarded;
      continue;
    }

    BoundState state;
    state.energy = fit.energy;
    state.extrapolated = extrapolate;
    state.estimated_order = fit.order;
    state.grid = grids.back();
    state.scheme = finest.scheme;
    state.wavefunction = eigenfunction(finest, levels[rungs - 1][k]);
    state.node_count = count_nodes(state.wavefunction);
    if (state.node_count != static_cast<int>(outcome.states.size())) {
      throw std::runtime_error(
          "solve_states: node count " + std::to_string(state.node_count) +
          " does not match state index " +
          std::to_string(outcome.states.size()));
    }

    double threshold = options.numerov_check_tol;
    if (rungs >= 2) {
      threshold = std::max(
          threshold,
          10.0 * std::fabs(levels[rungs - 1][k] - levels[rungs - 2][k]));
    }
    const auto ctx = ShootContext<double>::build(problem, grids.back());
    state.cross_check_defect = ctx.shoot(state.energy).defect;
    if (!(std::fabs(state.cross_check_defect) <= threshold)) {
      throw std::runtime_error(
          "solve_states: Numerov cross-check failed for state " +
          std::to_string(k) + " (defect " +
          std::to_string(state.cross_check_defect) + ", threshold " +
          std::to_string(threshold) + ")");
    }
    outcome.states.push_back(std::move(state));
  }
  return outcome;
}

CollapseReport collapse_diagnostic(const RadialProblem& problem,
                                   const GridSpec& base_grid, int rungs) {
  if (rungs < 4) {
    throw std::invalid_argument("collapse_diagnostic: need at least 4 rungs");
  }
  if (!(base_grid.r_min > 0.0)) {
    throw std::invalid_argument(
        "collapse_diagnostic: base grid must start off the origin");
  }
  validate_grid(base_grid);

  CollapseReport report;
  long long scale = 1;
  for (int j = 0; j < rungs; ++j, scale *= 2) {
    const long long n =
        static_cast<long long>(base_grid.interior_points + 1) * scale - 1;
    if (n > std::numeric_limits<int>::max() / 2) {
      throw std::invalid_argument(
          "collapse_diagnostic: ladder grid too large for this many rungs");
    }
    const GridSpec g =
        GridSpec::make(base_grid.r_min / static_cast<double>(scale),
                       base_grid.r_max, static_cast<int>(n));
    const TridiagonalOperator op = discretize(problem, g);
    report.ladder.emplace_back(g, eigen_lowest(op, 1)[0]);
  }

  bool any_negative = false;
  bool doubling = true;
  for (std::size_t j = 0; j < report.ladder.size(); ++j) {
    const double e = report.ladder[j].second;
    if (e < 0.0) {
      any_negative = true;
    } else {
      doubling = false;
    }
    if (j > 0 && !(std::fabs(e) >=
                   2.0 * std::fabs(report.ladder[j - 1].second))) {
      doubling = false;
    }
  }
  report.classification =
      !any_negative ? CollapseReport::Classification::NoBoundStates
                    : (doubling ? CollapseReport::Classification::Collapse
                                : CollapseReport::Classification::Stable);
  return report;
}

std::vector<double> dual_method_gap(const RadialProblem& problem,
                                    const GridSpec& grid, int n_states) {
  if (n_states < 1) {
    throw std::invalid_argument("dual_method_gap: n_states must be >= 1");
  }
  if (classify_stability(problem).kind == StabilityKind::Supercritical) {
    throw SupercriticalError("dual_method_gap: supercritical channel");
  }
  using Real = long double;
  const bool half = half_mesh_scheme(problem, grid);
  std::vector<Real> diag, off;
  build_tridiagonal<Real>(problem, grid, half, diag, off);
  const auto ctx = ShootContext<Real>::build(problem, grid);

  std::vector<double> gaps(n_states);
  for (int k = 0; k < n_states; ++k) {
    const Real ev = bisect_kth<Real>(diag, off, k, Real(1e-14));
    const Real zero = defect_zero_near<Real>(ctx, ev, Real(1e-14));
    gaps[k] = static_cast<double>(std::fabs(ev - zero));
  }
  return gaps;
}

}  // namespace ddatom
