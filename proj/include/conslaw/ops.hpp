#pragma once

#include <string>
#include <utility>

#include "conslaw/poly.hpp"

namespace conslaw {

/// Directions of the four first-order difference operators on the uniform
/// orthogonal mesh.
enum class Dir { PlusH, MinusH, PlusTau, MinusTau };

inline std::string dir_name(Dir d) {
  switch (d) {
    case Dir::PlusH: return "+h";
    case Dir::MinusH: return "-h";
    case Dir::PlusTau: return "+tau";
    case Dir::MinusTau: return "-tau";
  }
  return "?";
}

/// Shift operator S_tau^dk S_h^dl on the uniform mesh: grid values are
/// relabelled, t -> t + dk*tau, x -> x + dl*h; steps and aux symbols are
/// untouched. Throws if a shifted offset leaves the window.
inline Poly shift(const Poly& p, int dk, int dl, int window = kDefaultWindow) {
  if (dk == 0 && dl == 0) return p;
  Poly relabelled;
  for (const auto& [m, c] : p.terms()) {
    Monomial nm;
    for (const auto& f : m.factors()) {
      if (f.var.is_grid()) {
        const int k = f.var.grid_k() + dk;
        const int l = f.var.grid_l() + dl;
        if (k < -window || k > window || l < -window || l > window)
          throw Error("stencil window overflow: shift lands on offset (" +
                      std::to_string(k) + "," + std::to_string(l) +
                      "), window is " + std::to_string(window));
        nm = nm.times(Monomial::of(Var::grid(k, l), f.exp));
      } else {
        nm = nm.times(Monomial::of(f.var, f.exp));
      }
    }
    relabelled.add_term(nm, c);
  }
  if (dk != 0 && relabelled.exponent_range(Var::t()).second > 0)
    relabelled = relabelled.substituted(
        Var::t(), Poly::var(Var::t()) + Rational(dk) * Poly::var(Var::tau()));
  if (dl != 0 && relabelled.exponent_range(Var::x()).second > 0)
    relabelled = relabelled.substituted(
        Var::x(), Poly::var(Var::x()) + Rational(dl) * Poly::var(Var::h()));
  return relabelled;
}

/// Finite-difference operators D_{+h}, D_{-h}, D_{+tau}, D_{-tau}:
/// D_{+h} p = (S_{+h} p - p)/h, D_{-h} p = (p - S_{-h} p)/h, and likewise in
/// time with tau. They commute pairwise on the uniform stationary mesh.
inline Poly diff_op(const Poly& p, Dir d, int window = kDefaultWindow) {
  Poly num;
  Var step = Var::h();
  switch (d) {
    case Dir::PlusH: num = shift(p, 0, 1, window) - p; break;
    case Dir::MinusH: num = p - shift(p, 0, -1, window); break;
    case Dir::PlusTau:
      num = shift(p, 1, 0, window) - p;
      step = Var::tau();
      break;
    case Dir::MinusTau:
      num = p - shift(p, -1, 0, window);
      step = Var::tau();
      break;
  }
  return num * Poly::var(step, -1);
}

/// The discrete Euler operator written around the stencil center:
///
///   E_U(p) = sum over grid offsets (k,l) occurring in p of
///            S_tau^{-k} S_h^{-l} ( dp / dU[k,l] ),
///
/// i.e. every formal partial derivative is shifted so that the variable it
/// was taken with respect to lands on the center. E_U annihilates exactly
/// the difference divergences D_{-tau} Theta + D_{-h} Phi on the uniform
/// lattice, which makes it the engine of the multiplier method.
inline Poly euler_op(const Poly& p, int window = kDefaultWindow) {
  if (p.contains_kind(VarKind::Jet))
    throw Error("euler_op: jet symbols are not grid quantities");
  Poly r;
  for (Var g : p.grid_vars())
    r += shift(p.derivative(g), -g.grid_k(), -g.grid_l(), window);
  return r;
}

/// True iff E_U(p) vanishes identically, i.e. p is a difference divergence
/// on the uniform lattice. A certificate pair (Theta, Phi) can be produced
/// with find_density_flux.
inline bool is_divergence(const Poly& p, int window = kDefaultWindow) {
  return euler_op(p, window).is_zero();
}

}  // namespace conslaw
