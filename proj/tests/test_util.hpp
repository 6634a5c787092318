#pragma once

#include <random>

#include "conslaw/poly.hpp"

namespace conslaw::testutil {

/// Deterministic random polynomial in the grid values of the 3x3 block,
/// optionally with t/x factors and Laurent mesh-step factors. Used by the
/// property tests; everything is seeded, nothing depends on global state.
struct RandomPolyGen {
  std::mt19937 rng;
  int max_terms = 6;
  int max_grid_degree = 3;
  int max_tx_degree = 0;
  int laurent_range = 2;  // h,tau exponents drawn from [-range, range]
  int window = 1;         // grid offsets drawn from [-window, window]

  explicit RandomPolyGen(unsigned seed) : rng(seed) {}

  Rational coeff() {
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 3);
    int n = num(rng);
    if (n == 0) n = 1;
    return Rational(n, den(rng));
  }

  Poly operator()() {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> off(-window, window);
    std::uniform_int_distribution<int> deg(0, max_grid_degree);
    std::uniform_int_distribution<int> lexp(-laurent_range, laurent_range);
    std::uniform_int_distribution<int> txe(0, max_tx_degree);
    Poly p;
    const int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
      Monomial m;
      const int d = deg(rng);
      for (int j = 0; j < d; ++j)
        m = m.times(Monomial::of(Var::grid(off(rng), off(rng))));
      const int eh = lexp(rng), et = lexp(rng);
      if (eh) m = m.times(Monomial::of(Var::h(), eh));
      if (et) m = m.times(Monomial::of(Var::tau(), et));
      if (max_tx_degree > 0) {
        const int at = txe(rng), ax = txe(rng);
        if (at) m = m.times(Monomial::of(Var::t(), at));
        if (ax) m = m.times(Monomial::of(Var::x(), ax));
      }
      p.add_term(m, coeff());
    }
    return p;
  }
};

}  // namespace conslaw::testutil
