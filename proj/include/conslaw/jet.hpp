#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "conslaw/poly.hpp"

namespace conslaw {

/// The jet symbol u_{i,j} (i time derivatives, j space derivatives).
inline Poly jet(int i, int j) { return Poly::var(Var::jet(i, j)); }

namespace detail {

/// Taylor series of the grid value U[k,l] about the stencil center,
/// truncated at total derivative order `order`:
///   sum over i+j <= order of (k tau)^i (l h)^j / (i! j!) * u_{i,j}.
inline Poly grid_jet_series(int k, int l, int order) {
  Poly s;
  for (int i = 0; i <= order; ++i) {
    if (k == 0 && i > 0) break;
    for (int j = 0; i + j <= order; ++j) {
      if (l == 0 && j > 0) continue;
      Rational c(1);
      c = Rational(BigInt(1), factorial(i) * factorial(j));
      BigInt kp = 1, lp = 1;
      for (int q = 0; q < i; ++q) kp *= k;
      for (int q = 0; q < j; ++q) lp *= l;
      c *= Rational(kp * lp);
      if (c == 0) continue;
      Monomial m = Monomial::of(Var::jet(i, j));
      if (i > 0) m = m.times(Monomial::of(Var::tau(), i));
      if (j > 0) m = m.times(Monomial::of(Var::h(), j));
      Poly term = Poly::term(c, m);
      s += term;
    }
  }
  return s;
}

}  // namespace detail

/// Substitutes the truncated Taylor series for every grid value and expands
/// exactly. Truncation is by total derivative order (jet weight), which
/// makes the map a ring homomorphism up to truncation:
/// expand(p*q) == truncate(expand(p)*expand(q)).
inline Poly taylor_expand(const Poly& p, int order) {
  if (p.contains_kind(VarKind::Aux))
    throw Error("taylor_expand: aux symbols have no jet expansion");
  if (p.contains_kind(VarKind::Jet))
    throw Error("taylor_expand: input already contains jet symbols");

  std::map<std::uint16_t, Poly> series;  // per grid var
  auto series_of = [&](Var g) -> const Poly& {
    auto it = series.find(g.ordinal());
    if (it == series.end())
      it = series
               .emplace(g.ordinal(),
                        detail::grid_jet_series(g.grid_k(), g.grid_l(), order))
               .first;
    return it->second;
  };

  Poly out;
  for (const auto& [m, c] : p.terms()) {
    Monomial rest;
    Poly factor = Rational(1);
    bool first = true;
    for (const auto& f : m.factors()) {
      if (!f.var.is_grid()) {
        rest = rest.times(Monomial::of(f.var, f.exp));
        continue;
      }
      for (int e = 0; e < f.exp; ++e) {
        if (first) {
          factor = series_of(f.var);
          first = false;
        } else {
          factor = mul_jet_truncated(factor, series_of(f.var), order);
        }
      }
    }
    if (first)
      out.add_term(rest, c);
    else
      out += Poly::term(c, rest) * factor;
  }
  return out;
}

/// Splits a jet polynomial by the literal (tau, h) exponents of its terms.
inline std::map<std::pair<int, int>, Poly> split_by_step_degrees(
    const Poly& p) {
  std::map<std::pair<int, int>, Poly> parts;
  for (const auto& [m, c] : p.terms())
    parts[{m.exponent(Var::tau()), m.exponent(Var::h())}].add_term(m, c);
  return parts;
}

/// Terms with tau-exponent == h-exponent == 0 (the continuum part).
inline Poly step_degree_zero_part(const Poly& p) {
  Poly r;
  for (const auto& [m, c] : p.terms())
    if (m.exponent(Var::tau()) == 0 && m.exponent(Var::h()) == 0)
      r.add_term(m, c);
  return r;
}

/// Lowest total (tau+h)-degree homogeneous part and its degree.
/// Returns degree 0 and the zero polynomial for zero input.
inline std::pair<int, Poly> leading_step_part(const Poly& p) {
  int best = 0;
  bool have = false;
  for (const auto& [m, c] : p.terms()) {
    const int d = m.exponent(Var::tau()) + m.exponent(Var::h());
    if (!have || d < best) best = d, have = true;
  }
  Poly part;
  if (have)
    for (const auto& [m, c] : p.terms())
      if (m.exponent(Var::tau()) + m.exponent(Var::h()) == best)
        part.add_term(m, c);
  return {have ? best : 0, part};
}

/// True iff a == c*b for some nonzero rational c.
inline bool proportional(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.term_count() != b.term_count()) return false;
  const auto& [ma, ca] = *a.terms().begin();
  const auto& [mb, cb] = *b.terms().begin();
  if (ma != mb) return false;
  const Rational c = ca / cb;
  return a == c * b;
}

/// Result of matching a scheme residual against its continuum PDE target.
struct ConsistencyReport {
  bool consistent = false;
  /// Terms with a negative tau or h exponent that failed to cancel.
  Poly inconsistent_part;
  /// Difference between the (tau,h)-degree-zero part and the target.
  Poly degree0_delta;
  /// Lowest positive tau exponent in the remainder; nullopt when the
  /// remainder is tau-free (exact in time at this expansion order).
  std::optional<int> order_t;
  std::optional<int> order_x;
  /// Minimal total-degree homogeneous remainder part.
  Poly leading_residual;
  int expansion_order = 0;
};

/// Expands F, demands exact cancellation of every negative (tau,h) power,
/// matches the degree-zero part against the PDE residual `target`, and
/// reports the lowest tau and h exponents of the surviving remainder as the
/// approximation orders. `order` = 0 selects an expansion order just deep
/// enough to expose remainder terms of total degree 2.
inline ConsistencyReport consistency_report(const Poly& f, const Poly& target,
                                            int order = 0) {
  if (order <= 0) {
    int min_laurent = 0;
    for (const auto& [m, c] : f.terms())
      min_laurent = std::min(
          min_laurent, m.exponent(Var::tau()) + m.exponent(Var::h()));
    order = 2 - min_laurent;
  }
  ConsistencyReport rep;
  rep.expansion_order = order;
  const Poly e = taylor_expand(f, order);

  Poly negative, remainder;
  for (const auto& [m, c] : e.terms()) {
    const int a = m.exponent(Var::tau());
    const int b = m.exponent(Var::h());
    if (a < 0 || b < 0)
      negative.add_term(m, c);
    else if (a > 0 || b > 0)
      remainder.add_term(m, c);
  }
  rep.inconsistent_part = negative;
  rep.degree0_delta = step_degree_zero_part(e) - target;
  rep.consistent = negative.is_zero() && rep.degree0_delta.is_zero();

  for (const auto& [m, c] : remainder.terms()) {
    const int a = m.exponent(Var::tau());
    const int b = m.exponent(Var::h());
    if (a >= 1 && (!rep.order_t || a < *rep.order_t)) rep.order_t = a;
    if (b >= 1 && (!rep.order_x || b < *rep.order_x)) rep.order_x = b;
  }
  rep.leading_residual = leading_step_part(remainder).second;
  return rep;
}

}  // namespace conslaw
