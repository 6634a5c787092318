#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "conslaw/grid.hpp"
#include "conslaw/schemes.hpp"
#include "conslaw/tridiag.hpp"

namespace conslaw {

namespace detail {

/// Neighbor access honoring the boundary condition. For Dirichlet grids the
/// positions just outside the interior hold the fixed boundary values.
inline double at(const std::vector<double>& u, int m, const Grid1D& g) {
  const int M = g.M;
  if (g.bc.kind == BcKind::Periodic) return u[((m % M) + M) % M];
  if (m == -1) return g.bc.left;
  if (m == M) return g.bc.right;
  if (m < -1 || m > M) throw Error("stencil reaches past the boundary");
  return u[m];
}

inline void check_finite(const std::vector<double>& u, const char* what) {
  for (double v : u)
    if (!std::isfinite(v))
      throw Error(std::string(what) + ": non-finite value encountered");
}

}  // namespace detail

/// Builds the two starting layers: layer 0 samples u0, layer 1 is the
/// second-order Taylor start
///   u0 + tau v0 + (tau^2/2) (1 + c ux^2) uxx,
/// with centered differences for ux, uxx and c = 1 for the nonlinear
/// schemes, c = 0 for the linear one.
inline SolutionState init_state(const Grid1D& grid,
                                const InitialCondition& ic,
                                const Scheme& scheme) {
  grid.validate();
  SolutionState s;
  s.n = 1;
  s.prev.resize(grid.M);
  s.curr.resize(grid.M);
  for (int m = 0; m < grid.M; ++m) s.prev[m] = ic.u0(grid.node_x(m));
  const double c = scheme.nonlinear ? 1.0 : 0.0;
  for (int m = 0; m < grid.M; ++m) {
    const double up = detail::at(s.prev, m + 1, grid);
    const double um = detail::at(s.prev, m - 1, grid);
    const double u = s.prev[m];
    const double sx = (up - um) / (2.0 * grid.h);
    const double sxx = (up - 2.0 * u + um) / (grid.h * grid.h);
    const double v = ic.v0(grid.node_x(m));
    s.curr[m] =
        u + grid.tau * v + 0.5 * grid.tau * grid.tau * (1.0 + c * sx * sx) * sxx;
  }
  detail::check_finite(s.prev, "init_state");
  detail::check_finite(s.curr, "init_state");
  return s;
}

/// Overrides the Taylor start with explicit two-layer data.
inline SolutionState init_state_layers(const Grid1D& grid,
                                       std::vector<double> layer0,
                                       std::vector<double> layer1) {
  grid.validate();
  if (static_cast<int>(layer0.size()) != grid.M ||
      static_cast<int>(layer1.size()) != grid.M)
    throw Error("init_state_layers: layer length does not match the grid");
  return {1, std::move(layer0), std::move(layer1)};
}

namespace detail {

inline std::vector<double> step_explicit(const SolutionState& s,
                                         const Scheme& scheme,
                                         const Grid1D& g) {
  const double r2 = g.tau * g.tau / (g.h * g.h);
  const double t2 = g.tau * g.tau;
  std::vector<double> next(g.M);
  for (int m = 0; m < g.M; ++m) {
    const double u = s.curr[m];
    const double up = at(s.curr, m + 1, g);
    const double um = at(s.curr, m - 1, g);
    const double uxx2 = up - 2.0 * u + um;  // h^2 * U_xxbar
    double nl = 0.0;
    switch (scheme.id) {
      case SchemeId::LinearCross:
        break;
      case SchemeId::NonlinearDiv2: {
        const double ux = (up - u) / g.h;
        const double uxb = (u - um) / g.h;
        nl = t2 * (ux * ux * ux - uxb * uxb * uxb) / (3.0 * g.h);
        break;
      }
      case SchemeId::NonlinearCross1: {
        const double ux = (up - u) / g.h;
        const double uxb = (u - um) / g.h;
        nl = r2 * 0.5 * (ux * ux + uxb * uxb) * uxx2;
        break;
      }
      case SchemeId::NonlinearNine3:
        throw Error("NonlinearNine3 is implicit");
    }
    next[m] = 2.0 * u - s.prev[m] + r2 * uxx2 + nl;
  }
  return next;
}

/// One implicit step of the nine-point scheme. The residual is linear in
/// the upper layer, with coefficients depending on the known layers only
/// through the squared slopes a_m = U_x,m^2, so the system is (cyclic)
/// tridiagonal and strictly diagonally dominant thanks to the 1/tau^2 term.
inline std::vector<double> step_implicit_nine(const SolutionState& s,
                                              const Grid1D& g) {
  const int M = g.M;
  const double inv_t2 = 1.0 / (g.tau * g.tau);
  const double inv_h2 = 1.0 / (g.h * g.h);
  const double c6 = 1.0 / (6.0 * g.h);

  // slope at the right of node m, for the current and previous layers
  auto slope = [&](const std::vector<double>& u, int m) {
    return (at(u, m + 1, g) - at(u, m, g)) / g.h;
  };

  std::vector<double> sub(M), diag(M), super(M), rhs(M);
  for (int m = 0; m < M; ++m) {
    const double am = slope(s.curr, m) * slope(s.curr, m);
    const double amm = slope(s.curr, m - 1) * slope(s.curr, m - 1);
    super[m] = -am / (6.0 * g.h * g.h);
    sub[m] = -amm / (6.0 * g.h * g.h);
    diag[m] = inv_t2 + (am + amm) / (6.0 * g.h * g.h);
    const double uxx =
        (at(s.curr, m + 1, g) - 2.0 * s.curr[m] + at(s.curr, m - 1, g)) *
        inv_h2;
    rhs[m] = (2.0 * s.curr[m] - s.prev[m]) * inv_t2 + uxx +
             c6 * (am * slope(s.prev, m) - amm * slope(s.prev, m - 1));
  }

  if (g.bc.kind == BcKind::Periodic) {
    // rows 0 and M-1 wrap; their band entries move to the corners
    CornerTerms corners{sub[0], super[M - 1]};
    sub[0] = 0.0;
    super[M - 1] = 0.0;
    return solve_tridiagonal_cyclic(sub, diag, super, corners, rhs);
  }
  // Dirichlet: the ghost unknowns are the fixed boundary values
  rhs[0] -= sub[0] * g.bc.left;
  rhs[M - 1] -= super[M - 1] * g.bc.right;
  sub[0] = 0.0;
  super[M - 1] = 0.0;
  return solve_tridiagonal(sub, diag, super, rhs);
}

}  // namespace detail

/// Advances one time level and returns the new state; the input is not
/// modified. Explicit schemes solve the residual for the upper value
/// pointwise; the implicit scheme solves its (cyclic) tridiagonal system.
inline SolutionState step(const SolutionState& s, const Scheme& scheme,
                          const Grid1D& grid) {
  std::vector<double> next = scheme.stepper == StepperKind::ImplicitTridiagonal
                                 ? detail::step_implicit_nine(s, grid)
                                 : detail::step_explicit(s, scheme, grid);
  detail::check_finite(next, "step");
  SolutionState out;
  out.n = s.n + 1;
  out.prev = s.curr;
  out.curr = std::move(next);
  return out;
}

/// Runs `steps` time steps from the initial condition and records every
/// layer.
inline Trajectory run(const Scheme& scheme, const Grid1D& grid,
                      const InitialCondition& ic, long steps,
                      unsigned seed = 0) {
  SolutionState s = init_state(grid, ic, scheme);
  Trajectory traj;
  traj.grid = grid;
  traj.scheme = scheme.name;
  traj.ic_description = ic.description;
  traj.seed = seed;
  traj.layers.push_back(s.prev);
  traj.layers.push_back(s.curr);
  for (long i = 0; i < steps; ++i) {
    s = step(s, scheme, grid);
    traj.layers.push_back(s.curr);
  }
  return traj;
}

}  // namespace conslaw
