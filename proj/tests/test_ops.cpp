#include <doctest.h>

#include "conslaw/ops.hpp"
#include "test_util.hpp"

using namespace conslaw;

TEST_SUITE_BEGIN("ops");

namespace {
Poly U(int k, int l) { return Poly::var(Var::grid(k, l)); }
const Poly T = Poly::var(Var::t());
const Poly X = Poly::var(Var::x());
const Poly H = Poly::var(Var::h());
const Poly Tau = Poly::var(Var::tau());

/// Independent oracle for the discrete Euler operator: term-by-term formal
/// differentiation and index relabelling, written against the raw monomial
/// representation (no calls into shift/euler_op). Inputs must be free of
/// explicit t and x.
Poly euler_oracle(const Poly& p) {
  Poly out;
  for (Var g : p.grid_vars()) {
    const int k = g.grid_k(), l = g.grid_l();
    for (const auto& [m, c] : p.terms()) {
      const int e = m.exponent(g);
      if (e == 0) continue;
      Monomial shifted;
      for (const auto& f : m.factors()) {
        int exp = f.exp;
        if (f.var == g) exp -= 1;
        if (exp == 0) continue;
        if (f.var.is_grid())
          shifted = shifted.times(
              Monomial::of(Var::grid(f.var.grid_k() - k, f.var.grid_l() - l),
                           exp));
        else
          shifted = shifted.times(Monomial::of(f.var, exp));
      }
      out.add_term(shifted, c * e);
    }
  }
  return out;
}
}  // namespace

TEST_CASE("shift relabels grid values and translates coordinates") {
  CHECK(shift(U(0, 0), 1, 0) == U(1, 0));
  CHECK(shift(T, 1, 0) == T + Tau);
  CHECK(shift(U(0, 0) * U(0, 1), 0, -1) == U(0, -1) * U(0, 0));
  CHECK(shift(X, 0, -2) == X - 2 * H);
  CHECK(shift(T * T, 1, 0) == T * T + 2 * T * Tau + Tau * Tau);
  // h, tau, eps untouched
  const Poly p = H * Tau * Poly::var(Var::eps());
  CHECK(shift(p, 1, 1) == p);
}

TEST_CASE("shifts commute") {
  const Poly p = U(0, 0) * U(1, -1) + T * U(0, 1);
  CHECK(shift(shift(p, 1, 0), 0, 1) == shift(shift(p, 0, 1), 1, 0));
  CHECK(shift(shift(p, 1, 1), -1, -1) == p);
}

TEST_CASE("shift window overflow raises") {
  CHECK_THROWS_WITH_AS(shift(U(4, 0), 1, 0), doctest::Contains("overflow"),
                       Error);
  CHECK_NOTHROW(shift(U(4, 0), 1, 0, 5));
}

TEST_CASE("difference operators match their defining quotients") {
  CHECK(diff_op(U(0, 0), Dir::PlusH) ==
        (U(0, 1) - U(0, 0)) * Poly::var(Var::h(), -1));
  CHECK(diff_op(U(0, 0), Dir::MinusH) ==
        (U(0, 0) - U(0, -1)) * Poly::var(Var::h(), -1));
  CHECK(diff_op(diff_op(U(0, 0), Dir::PlusTau), Dir::MinusTau) ==
        (U(1, 0) - 2 * U(0, 0) + U(-1, 0)) * Poly::var(Var::tau(), -2));
  CHECK(diff_op(X, Dir::PlusH) == Poly(1));
  CHECK(diff_op(T, Dir::MinusTau) == Poly(1));
}

TEST_CASE("difference operators commute pairwise") {
  testutil::RandomPolyGen gen(777);
  gen.max_tx_degree = 1;
  const Dir dirs[] = {Dir::PlusH, Dir::MinusH, Dir::PlusTau, Dir::MinusTau};
  for (int trial = 0; trial < 20; ++trial) {
    const Poly p = gen();
    for (Dir a : dirs)
      for (Dir b : dirs)
        CHECK(diff_op(diff_op(p, a), b) == diff_op(diff_op(p, b), a));
  }
}

TEST_CASE("euler_op on the frozen examples") {
  CHECK(euler_op(U(0, 0) * U(0, 0)) == 2 * U(0, 0));
  CHECK(euler_op(U(0, 0) * U(0, 1)) == U(0, 1) + U(0, -1));
  CHECK(euler_op(diff_op(U(0, 0) * U(0, 0), Dir::MinusH)).is_zero());
  CHECK(is_divergence(diff_op(U(0, 0).pow(3), Dir::MinusH)));
  CHECK_FALSE(is_divergence(U(0, 0) * U(0, 0)));
}

TEST_CASE("euler_op agrees with the independent oracle") {
  testutil::RandomPolyGen gen(424242);
  for (int trial = 0; trial < 40; ++trial) {
    const Poly p = gen();
    CHECK(euler_op(p) == euler_oracle(p));
  }
}

TEST_CASE("euler_op is linear") {
  testutil::RandomPolyGen gen(99);
  for (int trial = 0; trial < 20; ++trial) {
    const Poly p = gen(), q = gen();
    const Rational a(3, 2), b(-5, 7);
    CHECK(euler_op(a * p + b * q) == a * euler_op(p) + b * euler_op(q));
  }
}

TEST_CASE("euler_op annihilates divergences") {
  testutil::RandomPolyGen gen(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const Poly theta = gen(), phi = gen();
    const Poly div =
        diff_op(theta, Dir::MinusTau, 4) + diff_op(phi, Dir::MinusH, 4);
    CHECK(euler_op(div, 4).is_zero());
  }
}

TEST_SUITE_END();
