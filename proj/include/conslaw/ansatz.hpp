#pragma once

#include <string>
#include <vector>

#include "conslaw/linalg.hpp"
#include "conslaw/ops.hpp"
#include "conslaw/poly.hpp"

namespace conslaw {

/// A linear ansatz: candidate expressions are arbitrary rational-linear
/// combinations of the basis elements, one unknown coefficient each.
struct AnsatzSpec {
  std::vector<Poly> basis;
  std::vector<std::string> names;  // optional labels, parallel to basis
};

/// Matrix whose column j is the coefficient vector of polys[j] over the
/// union of all occurring monomials; rows follow the monomial order.
inline SparseMatrix coefficient_matrix(const std::vector<Poly>& polys) {
  std::map<Monomial, int, MonoLess> row_of;
  for (const auto& p : polys)
    for (const auto& [m, c] : p.terms()) row_of.emplace(m, 0);
  int idx = 0;
  for (auto& [m, r] : row_of) r = idx++;

  SparseMatrix a;
  a.cols = static_cast<int>(polys.size());
  a.rows.assign(row_of.size(), {});
  for (int j = 0; j < a.cols; ++j)
    for (const auto& [m, c] : polys[j].terms())
      a.rows[row_of.at(m)][j] = c;
  return a;
}

inline bool linearly_independent(const std::vector<Poly>& polys) {
  return rank(coefficient_matrix(polys)) == static_cast<int>(polys.size());
}

/// True iff q is a rational-linear combination of the given polynomials.
inline bool in_span(const Poly& q, const std::vector<Poly>& polys) {
  std::vector<Poly> all = polys;
  all.push_back(q);
  return rank(coefficient_matrix(all)) == rank(coefficient_matrix(polys));
}

inline bool same_span(const std::vector<Poly>& a,
                      const std::vector<Poly>& b) {
  std::vector<Poly> all = a;
  all.insert(all.end(), b.begin(), b.end());
  const int ra = rank(coefficient_matrix(a));
  const int rb = rank(coefficient_matrix(b));
  return ra == rb && rank(coefficient_matrix(all)) == ra;
}

namespace detail {

/// Common core of the two determining-equation solvers: given the exact
/// expansions e_j = E_U(...) that multiply the unknown coefficients, split
/// sum_j c_j e_j == 0 by monomials and return the nullspace recombined over
/// the ansatz basis.
inline std::vector<Poly> determining_system_nullspace(
    const std::vector<Poly>& basis, const std::vector<Poly>& euler_images) {
  const auto solutions = nullspace(coefficient_matrix(euler_images));
  std::vector<Poly> out;
  out.reserve(solutions.size());
  for (const auto& c : solutions) {
    Poly p;
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (c[j] != 0) p += c[j] * basis[j];
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace detail

/// Solves the determining equations E_U(Lambda * F) == 0 for multipliers
/// Lambda in the span of the ansatz. The conditions hold identically in the
/// mesh quantities, so the expansion is split by monomials into an exact
/// linear system; the result is the reduced-row-echelon nullspace basis.
/// An empty result means the ansatz admits no multiplier.
inline std::vector<Poly> find_multipliers(const Poly& f,
                                          const AnsatzSpec& ansatz,
                                          int window = kDefaultWindow) {
  if (!linearly_independent(ansatz.basis))
    throw Error("find_multipliers: ansatz basis is not linearly independent");
  std::vector<Poly> images;
  images.reserve(ansatz.basis.size());
  for (const auto& b : ansatz.basis)
    images.push_back(euler_op(b * f, window));
  return detail::determining_system_nullspace(ansatz.basis, images);
}

/// The reverse mode: the multiplier is fixed and the scheme residual F is
/// unknown within a linear ansatz. Solves E_U(Lambda * F) == 0 for the
/// F-coefficients and returns the general solution family (empty when only
/// F = 0 works).
inline std::vector<Poly> solve_scheme_coefficients(
    const AnsatzSpec& f_ansatz, const Poly& multiplier,
    int window = kDefaultWindow) {
  if (!linearly_independent(f_ansatz.basis))
    throw Error(
        "solve_scheme_coefficients: ansatz basis is not linearly independent");
  std::vector<Poly> images;
  images.reserve(f_ansatz.basis.size());
  for (const auto& b : f_ansatz.basis)
    images.push_back(euler_op(multiplier * b, window));
  return detail::determining_system_nullspace(f_ansatz.basis, images);
}

/// The five-point cross multiplier ansatz: constant coefficients on the
/// stencil values {U, U+, U-, Uhat, Ucheck}.
inline AnsatzSpec cross5_linear_ansatz() {
  AnsatzSpec a;
  a.basis = {Poly::var(Var::grid(0, 0)), Poly::var(Var::grid(0, 1)),
             Poly::var(Var::grid(0, -1)), Poly::var(Var::grid(-1, 0)),
             Poly::var(Var::grid(1, 0))};
  a.names = {"U", "U+", "U-", "Ucheck", "Uhat"};
  return a;
}

/// The nine-point linear multiplier ansatz: constant coefficients on all
/// values of the 3x3 stencil block.
inline AnsatzSpec nine_linear_ansatz() {
  AnsatzSpec a;
  for (int k = -1; k <= 1; ++k)
    for (int l = -1; l <= 1; ++l) {
      a.basis.push_back(Poly::var(Var::grid(k, l)));
      a.names.push_back(Var::grid(k, l).name());
    }
  return a;
}

/// The affine coordinate ansatz {1, t, x}.
inline AnsatzSpec affine_tx_ansatz() {
  AnsatzSpec a;
  a.basis = {Poly(1), Poly::var(Var::t()), Poly::var(Var::x())};
  a.names = {"1", "t", "x"};
  return a;
}

/// Cross-stencil ansatz with {1, t, x} coefficients on the natural centered
/// difference quotients. This is the space in which multipliers with
/// coordinate-dependent continuum limits (t*u_x + x*u_t and the like) live,
/// and the space in which the x*u_x + t*u_t analog can be shown absent.
inline AnsatzSpec cross5_coordinate_ansatz() {
  const Poly u = Poly::var(Var::grid(0, 0));
  const Poly sym_x = (Poly::var(Var::grid(0, 1)) - Poly::var(Var::grid(0, -1))) *
                     Rational(1, 2) * Poly::var(Var::h(), -1);
  const Poly sym_t = (Poly::var(Var::grid(1, 0)) - Poly::var(Var::grid(-1, 0))) *
                     Rational(1, 2) * Poly::var(Var::tau(), -1);
  const Poly dxx = (Poly::var(Var::grid(0, 1)) - 2 * u +
                    Poly::var(Var::grid(0, -1))) *
                   Poly::var(Var::h(), -2);
  const Poly dtt = (Poly::var(Var::grid(1, 0)) - 2 * u +
                    Poly::var(Var::grid(-1, 0))) *
                   Poly::var(Var::tau(), -2);
  AnsatzSpec a;
  const std::vector<std::pair<Poly, std::string>> coords = {
      {Poly(1), ""}, {Poly::var(Var::t()), "t*"}, {Poly::var(Var::x()), "x*"}};
  const std::vector<std::pair<Poly, std::string>> quotients = {
      {Poly(1), "1"},      {u, "U"},          {sym_x, "DxSym"},
      {sym_t, "DtSym"},    {dxx, "Dxx"},      {dtt, "Dtt"}};
  for (const auto& [cp, cn] : coords)
    for (const auto& [qp, qn] : quotients) {
      a.basis.push_back(cp * qp);
      if (qn == "1")
        a.names.push_back(cn.empty() ? "1" : cn.substr(0, cn.size() - 1));
      else
        a.names.push_back(cn + qn);
    }
  return a;
}

inline AnsatzSpec named_ansatz(const std::string& name) {
  if (name == "cross5_linear") return cross5_linear_ansatz();
  if (name == "nine_linear") return nine_linear_ansatz();
  if (name == "affine_tx") return affine_tx_ansatz();
  if (name == "cross5_coordinate") return cross5_coordinate_ansatz();
  throw Error("unknown ansatz '" + name +
              "' (expected cross5_linear, nine_linear, affine_tx or "
              "cross5_coordinate)");
}

}  // namespace conslaw
