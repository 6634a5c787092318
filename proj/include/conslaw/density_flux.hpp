#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "conslaw/linalg.hpp"
#include "conslaw/ops.hpp"
#include "conslaw/poly.hpp"

namespace conslaw {

struct StencilWindow {
  int kmin = 0, kmax = 0, lmin = 0, lmax = 0;
  bool empty_k() const { return kmin > kmax; }
  bool empty_l() const { return lmin > lmax; }
};

/// Ansatz bounds for the density/flux reconstruction. Unset fields are
/// derived from the input polynomial.
struct DegreeBounds {
  std::optional<StencilWindow> theta_window;
  std::optional<StencilWindow> phi_window;
  int max_grid_degree = -1;  // -1: max grid degree of p
  int max_t_degree = -1;     // -1: derived (see find_density_flux)
  int max_x_degree = -1;
};

struct DensityFluxResult {
  /// (Theta, Phi) with D_{-tau} Theta + D_{-h} Phi == p, exactly.
  std::optional<std::pair<Poly, Poly>> pair;
  std::string detail;
  explicit operator bool() const { return pair.has_value(); }
};

namespace detail {

inline StencilWindow grid_window_of(const Poly& p) {
  StencilWindow w{0, 0, 0, 0};
  bool first = true;
  for (Var g : p.grid_vars()) {
    if (first) {
      w = {g.grid_k(), g.grid_k(), g.grid_l(), g.grid_l()};
      first = false;
    } else {
      w.kmin = std::min(w.kmin, g.grid_k());
      w.kmax = std::max(w.kmax, g.grid_k());
      w.lmin = std::min(w.lmin, g.grid_l());
      w.lmax = std::max(w.lmax, g.grid_l());
    }
  }
  return w;
}

/// All monomials in the grid values of `points` with total degree exactly d,
/// in a deterministic order.
inline void grid_monomials_exact(const std::vector<Var>& points, int d,
                                 std::size_t from, const Monomial& acc,
                                 std::vector<Monomial>& out) {
  if (d == 0) {
    out.push_back(acc);
    return;
  }
  if (from >= points.size()) return;
  // exponent e of points[from], then recurse
  for (int e = d; e >= 0; --e) {
    Monomial next = acc;
    if (e > 0) next = next.times(Monomial::of(points[from], e));
    grid_monomials_exact(points, d - e, from + 1, next, out);
  }
}

/// The (grid degree, tau-grading, h-grading) trigrading. t counts toward
/// the tau-grading and x toward the h-grading; the grading is preserved by
/// shifts and lowered by exactly one by the matching difference operator,
/// which lets the reconstruction split into small independent solves.
struct Grading {
  int g, a, b;
  bool operator<(const Grading& o) const {
    return std::tie(g, a, b) < std::tie(o.g, o.a, o.b);
  }
};

inline Grading grading_of(const Monomial& m) {
  return {m.degree_grid(),
          m.exponent(Var::tau()) + m.exponent(Var::t()),
          m.exponent(Var::h()) + m.exponent(Var::x())};
}

}  // namespace detail

/// Solves D_{-tau} Theta + D_{-h} Phi = p for polynomial density and flux
/// within the given bounds, by exact linear algebra over the monomial
/// coefficients. The representative is deterministic: the reduced
/// row-echelon solution with all free coefficients zero, ordered Theta
/// before Phi in monomial order. The pair is unique only modulo trivial
/// conservation laws, so callers should compare results through the
/// residual identity rather than coefficients.
inline DensityFluxResult find_density_flux(const Poly& p,
                                           DegreeBounds bounds = {},
                                           int window = kDefaultWindow) {
  DensityFluxResult res;
  if (p.is_zero()) {
    res.pair = {Poly(), Poly()};
    return res;
  }
  if (p.contains_kind(VarKind::Jet) || p.contains_kind(VarKind::Aux)) {
    res.detail = "input contains jet or aux symbols";
    return res;
  }

  const StencilWindow pw = detail::grid_window_of(p);
  StencilWindow tw =
      bounds.theta_window.value_or(StencilWindow{
          pw.kmin + 1, pw.kmax, pw.lmin, pw.lmax});
  StencilWindow fw = bounds.phi_window.value_or(StencilWindow{
      pw.kmin, pw.kmax, pw.lmin + 1, pw.lmax});
  const int max_t = bounds.max_t_degree >= 0
                        ? bounds.max_t_degree
                        : p.exponent_range(Var::t()).second + 1;
  const int max_x = bounds.max_x_degree >= 0
                        ? bounds.max_x_degree
                        : p.exponent_range(Var::x()).second + 1;

  std::vector<Var> theta_points, phi_points;
  for (int k = tw.kmin; k <= tw.kmax; ++k)
    for (int l = tw.lmin; l <= tw.lmax; ++l)
      theta_points.push_back(Var::grid(k, l));
  for (int k = fw.kmin; k <= fw.kmax; ++k)
    for (int l = fw.lmin; l <= fw.lmax; ++l)
      phi_points.push_back(Var::grid(k, l));

  // Split by the trigrading and solve each component independently.
  std::map<detail::Grading, Poly> components;
  for (const auto& [m, c] : p.terms())
    components[detail::grading_of(m)].add_term(m, c);

  Poly theta, phi;
  for (const auto& [grading, comp] : components) {
    if (bounds.max_grid_degree >= 0 && grading.g > bounds.max_grid_degree) {
      res.detail = "component of grid degree " + std::to_string(grading.g) +
                   " exceeds max_grid_degree; raise the bound";
      return res;
    }
    // Candidate monomials for Theta (tau-grading a+1, h-grading b) and Phi
    // (tau-grading a, h-grading b+1). Coordinate factors t^alpha, x^beta
    // absorb part of the grading; the mesh-step exponent makes up the rest.
    struct Unknown {
      Monomial mono;
      bool is_theta;
    };
    std::vector<Unknown> unknowns;
    auto add_candidates = [&](const std::vector<Var>& points, bool is_theta,
                              int tau_grading, int h_grading) {
      std::vector<Monomial> grid_monos;
      // t-dependent densities are only ever needed for grid-free input
      // (e.g. constants, which integrate to t/tau-type densities).
      const int tcap = grading.g == 0 ? max_t : std::min(
          max_t, p.exponent_range(Var::t()).second);
      const int xcap = grading.g == 0 ? max_x : std::min(
          max_x, p.exponent_range(Var::x()).second);
      detail::grid_monomials_exact(points, grading.g, 0, Monomial::unit(),
                                   grid_monos);
      for (const auto& gm : grid_monos)
        for (int alpha = 0; alpha <= tcap; ++alpha)
          for (int beta = 0; beta <= xcap; ++beta) {
            Monomial m = gm;
            if (alpha > 0) m = m.times(Monomial::of(Var::t(), alpha));
            if (beta > 0) m = m.times(Monomial::of(Var::x(), beta));
            const int etau = tau_grading - alpha;
            const int eh = h_grading - beta;
            if (etau != 0) m = m.times(Monomial::of(Var::tau(), etau));
            if (eh != 0) m = m.times(Monomial::of(Var::h(), eh));
            unknowns.push_back({m, is_theta});
          }
    };
    if (!tw.empty_k() && !tw.empty_l())
      add_candidates(theta_points, true, grading.a + 1, grading.b);
    else if (grading.g == 0)
      add_candidates({}, true, grading.a + 1, grading.b);
    if (!fw.empty_k() && !fw.empty_l())
      add_candidates(phi_points, false, grading.a, grading.b + 1);
    else if (grading.g == 0)
      add_candidates({}, false, grading.a, grading.b + 1);

    // Assemble sum_j c_j * D(mono_j) = comp and solve.
    std::vector<Poly> images;
    images.reserve(unknowns.size());
    for (const auto& u : unknowns)
      images.push_back(diff_op(Poly::term(Rational(1), u.mono),
                               u.is_theta ? Dir::MinusTau : Dir::MinusH,
                               window));

    std::map<Monomial, int, MonoLess> row_of;
    for (const auto& im : images)
      for (const auto& [m, c] : im.terms()) row_of.emplace(m, 0);
    for (const auto& [m, c] : comp.terms()) row_of.emplace(m, 0);
    int idx = 0;
    for (auto& [m, r] : row_of) r = idx++;

    SparseMatrix a;
    a.cols = static_cast<int>(unknowns.size());
    a.rows.assign(row_of.size(), {});
    for (int j = 0; j < a.cols; ++j)
      for (const auto& [m, c] : images[j].terms())
        a.rows[row_of.at(m)][j] = c;
    std::map<int, Rational> rhs;
    for (const auto& [m, c] : comp.terms()) rhs[row_of.at(m)] = c;

    const auto sol = solve_particular(std::move(a), rhs);
    if (!sol) {
      res.detail =
          "no density/flux pair within the given bounds for the component "
          "of grid degree " +
          std::to_string(grading.g) + "; raise the degree or window bounds";
      return res;
    }
    for (std::size_t j = 0; j < unknowns.size(); ++j) {
      if ((*sol)[j] == 0) continue;
      if (unknowns[j].is_theta)
        theta.add_term(unknowns[j].mono, (*sol)[j]);
      else
        phi.add_term(unknowns[j].mono, (*sol)[j]);
    }
  }

  // Exactness guard: recombine and compare.
  if (diff_op(theta, Dir::MinusTau, window) +
          diff_op(phi, Dir::MinusH, window) !=
      p) {
    res.detail = "internal error: recombination mismatch";
    return res;
  }
  res.pair = {std::move(theta), std::move(phi)};
  return res;
}

}  // namespace conslaw
