#pragma once

#include <cmath>
#include <vector>

#include "conslaw/grid.hpp"
#include "conslaw/poly.hpp"

namespace conslaw {

/// A stencil polynomial compiled for fast repeated numeric evaluation on a
/// fixed mesh: the hand tau exponents are folded into the term coefficients
/// at compile time, grid factors become (dk, dl, exp) lookups.
class CompiledKernel {
 public:
  struct GridFactor {
    int dk, dl, exp;
  };
  struct Term {
    double coeff;
    int t_exp, x_exp;
    std::vector<GridFactor> factors;
  };

  static CompiledKernel compile(const Poly& p, const Grid1D& grid) {
    if (p.contains_kind(VarKind::Jet) || p.contains_kind(VarKind::Aux))
      throw Error("kernel: jet/aux symbols cannot be evaluated on a grid");
    CompiledKernel k;
    k.grid_ = grid;
    for (const auto& [m, c] : p.terms()) {
      Term t;
      t.coeff = to_double(c);
      t.t_exp = m.exponent(Var::t());
      t.x_exp = m.exponent(Var::x());
      t.coeff *= std::pow(grid.h, m.exponent(Var::h()));
      t.coeff *= std::pow(grid.tau, m.exponent(Var::tau()));
      for (const auto& f : m.factors()) {
        if (!f.var.is_grid()) continue;
        t.factors.push_back({f.var.grid_k(), f.var.grid_l(), f.exp});
        k.kmin_ = std::min(k.kmin_, f.var.grid_k());
        k.kmax_ = std::max(k.kmax_, f.var.grid_k());
        k.lmin_ = std::min(k.lmin_, f.var.grid_l());
        k.lmax_ = std::max(k.lmax_, f.var.grid_l());
      }
      k.terms_.push_back(std::move(t));
    }
    return k;
  }

  int kmin() const { return kmin_; }
  int kmax() const { return kmax_; }
  int lmin() const { return lmin_; }
  int lmax() const { return lmax_; }

  /// Time levels n with all referenced layers available.
  long first_level(const Trajectory&) const { return -kmin_; }
  long last_level(const Trajectory& tr) const {
    return tr.layer_count() - 1 - kmax_;
  }

  double eval(const Trajectory& tr, long n, int m) const {
    double v, s;
    eval_with_scale(tr, n, m, v, s);
    return v;
  }

  /// Evaluates the kernel and also returns the sum of the absolute values
  /// of the term contributions, the natural denominator for relative
  /// residual measurements.
  void eval_with_scale(const Trajectory& tr, long n, int m, double& value,
                       double& abs_scale) const {
    value = 0.0;
    abs_scale = 0.0;
    const double t = n * grid_.tau;
    const double x = grid_.node_x(m);
    for (const auto& term : terms_) {
      double v = term.coeff;
      for (int e = 0; e < term.t_exp; ++e) v *= t;
      for (int e = 0; e < term.x_exp; ++e) v *= x;
      for (const auto& f : term.factors) {
        const double u = grid_value(tr, n + f.dk, m + f.dl);
        for (int e = 0; e < f.exp; ++e) v *= u;
      }
      value += v;
      abs_scale += std::abs(v);
    }
  }

 private:
  double grid_value(const Trajectory& tr, long n, int m) const {
    if (n < 0 || n >= tr.layer_count())
      throw Error("kernel: stencil exceeds available layers");
    const int M = grid_.M;
    if (grid_.bc.kind == BcKind::Periodic)
      return tr.layers[n][((m % M) + M) % M];
    if (m == -1) return grid_.bc.left;
    if (m == M) return grid_.bc.right;
    if (m < -1 || m > M) throw Error("kernel: stencil exceeds the boundary");
    return tr.layers[n][m];
  }

  Grid1D grid_;
  std::vector<Term> terms_;
  int kmin_ = 0, kmax_ = 0, lmin_ = 0, lmax_ = 0;
};

/// Reference evaluation used as the independent oracle for the compiled
/// kernels: walks the polynomial term map directly and uses std::pow,
/// converting each rational coefficient on the fly.
inline double eval_naive(const Poly& p, const Trajectory& tr, long n, int m) {
  const Grid1D& g = tr.grid;
  return p.eval([&](Var v) -> double {
    switch (v.kind()) {
      case VarKind::GridValue: {
        const long nn = n + v.grid_k();
        int mm = m + v.grid_l();
        if (nn < 0 || nn >= tr.layer_count())
          throw Error("eval_naive: level out of range");
        if (g.bc.kind == BcKind::Periodic)
          return tr.layers[nn][((mm % g.M) + g.M) % g.M];
        if (mm == -1) return g.bc.left;
        if (mm == g.M) return g.bc.right;
        return tr.layers[nn][mm];
      }
      case VarKind::TimeCoord: return n * g.tau;
      case VarKind::SpaceCoord: return g.node_x(m);
      case VarKind::SpaceStep: return g.h;
      case VarKind::TimeStep: return g.tau;
      default: throw Error("eval_naive: non-grid symbol");
    }
  });
}

}  // namespace conslaw
