#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "conslaw/kernel.hpp"
#include "conslaw/schemes.hpp"
#include "conslaw/stepper.hpp"

namespace conslaw {

/// Series of the global quantity Q_h = sum_m h * Theta over the admissible
/// time levels, with its absolute and relative drift. The drift is measured
/// on the flux-corrected invariant
///   C(n) = Q_h(n) + tau * sum_{n' <= n} [Phi(n', M-1) - Phi(n', -1)],
/// the exact constant implied by the local conservation law. For densities
/// and fluxes free of explicit x the boundary term telescopes to zero on a
/// periodic grid and C(n) == Q_h(n); for x-weighted quantities (angular
/// momentum, boost) and for Dirichlet runs the boundary flux is what the
/// balance law actually predicts.
struct DriftRecord {
  std::string label;
  long first_level = 0;
  std::vector<double> q;               ///< raw Q_h per admissible level
  std::vector<double> boundary_flux;   ///< accumulated seam/boundary flux
  double max_abs_drift = 0.0;
  double max_rel_drift = 0.0;
};

/// Q_h at one level: sum over the grid of h * Theta, with periodic wrap or
/// the Dirichlet ghost values.
inline double evaluate_density(const Trajectory& tr,
                               const ConservationTriple& triple, long n) {
  const CompiledKernel k = CompiledKernel::compile(triple.density, tr.grid);
  if (n < k.first_level(tr) || n > k.last_level(tr))
    throw Error("evaluate_density: density stencil exceeds available layers");
  double q = 0.0;
  for (int m = 0; m < tr.grid.M; ++m) q += tr.grid.h * k.eval(tr, n, m);
  return q;
}

/// Drift of the flux-corrected invariant C(n) relative to its initial
/// value. The normalization is max(|Q_h(first)|, sum_m h*|Theta|): the raw
/// |Q_h| alone can be accidentally tiny (a zero-mean momentum), which would
/// turn machine-level drift into a large ratio and make the measure
/// meaningless; the density scale keeps it honest. Zero trajectories
/// report zero drift.
inline DriftRecord drift_series(const Trajectory& tr,
                                const ConservationTriple& triple) {
  const CompiledKernel k = CompiledKernel::compile(triple.density, tr.grid);
  const CompiledKernel kf = CompiledKernel::compile(triple.flux, tr.grid);
  DriftRecord rec;
  rec.label = triple.label;
  rec.first_level = std::max(k.first_level(tr), kf.first_level(tr) - 1);
  const long last = std::min(k.last_level(tr), kf.last_level(tr));
  if (rec.first_level > last)
    throw Error("drift_series: trajectory too short for this density");
  double acc = 0.0;
  for (long n = rec.first_level; n <= last; ++n) {
    double q = 0.0;
    for (int m = 0; m < tr.grid.M; ++m) q += tr.grid.h * k.eval(tr, n, m);
    rec.q.push_back(q);
    if (n > rec.first_level)
      acc += tr.grid.tau *
             (kf.eval(tr, n, tr.grid.M - 1) - kf.eval(tr, n, -1));
    rec.boundary_flux.push_back(acc);
  }
  double abs_scale = 0.0;
  for (int m = 0; m < tr.grid.M; ++m)
    abs_scale += tr.grid.h * std::abs(k.eval(tr, rec.first_level, m));
  const double c0 = rec.q.front();
  for (std::size_t i = 0; i < rec.q.size(); ++i)
    rec.max_abs_drift = std::max(
        rec.max_abs_drift, std::abs(rec.q[i] + rec.boundary_flux[i] - c0));
  const double denom = std::max(std::abs(c0), abs_scale);
  rec.max_rel_drift = denom > 0.0 ? rec.max_abs_drift / denom
                                  : (rec.max_abs_drift > 0.0 ? HUGE_VAL : 0.0);
  return rec;
}

/// Per-level residual of the windowed global balance
///   D_{-tau} Q_h + Phi(right) - Phi(left) = 0
/// over the node window [m1, m1+len]. Requires the window far enough from
/// the boundary for both stencils.
inline std::vector<double> flux_balance(const Trajectory& tr,
                                        const ConservationTriple& triple,
                                        int m1, int len) {
  const CompiledKernel kt = CompiledKernel::compile(triple.density, tr.grid);
  const CompiledKernel kf = CompiledKernel::compile(triple.flux, tr.grid);
  const int lmin = std::min(kt.lmin(), kf.lmin());
  const int lmax = std::max(kt.lmax(), kf.lmax());
  if (tr.grid.bc.kind == BcKind::Dirichlet &&
      (m1 - 1 + lmin < -1 || m1 + len + lmax > tr.grid.M))
    throw Error("flux_balance: window too close to the boundary");
  const long first = std::max(kt.first_level(tr), kf.first_level(tr)) + 1;
  const long last = std::min(kt.last_level(tr), kf.last_level(tr));
  auto window_q = [&](long n) {
    double q = 0.0;
    for (int m = m1; m <= m1 + len; ++m) q += tr.grid.h * kt.eval(tr, n, m);
    return q;
  };
  std::vector<double> residuals;
  for (long n = first; n <= last; ++n) {
    const double dq = (window_q(n) - window_q(n - 1)) / tr.grid.tau;
    const double bal =
        dq + kf.eval(tr, n, m1 + len) - kf.eval(tr, n, m1 - 1);
    residuals.push_back(bal);
  }
  return residuals;
}

/// Max over all admissible nodes of |F| / sum|terms| for the scheme
/// residual: the relative measure is insensitive to the 1/tau^2 scale of
/// the residual terms.
inline double scheme_residual_rel_max(const Trajectory& tr,
                                      const Scheme& scheme) {
  const CompiledKernel k = CompiledKernel::compile(scheme.residual, tr.grid);
  double worst = 0.0;
  for (long n = k.first_level(tr); n <= k.last_level(tr); ++n)
    for (int m = 0; m < tr.grid.M; ++m) {
      double v, s;
      k.eval_with_scale(tr, n, m, v, s);
      if (s > 0.0) worst = std::max(worst, std::abs(v) / s);
    }
  return worst;
}

/// Pointwise residual of the conservation identity, evaluated numerically
/// with separately compiled kernels:
///   [Theta(n,m) - Theta(n-1,m)]/tau + [Phi(n,m) - Phi(n,m-1)]/h
///   - Lambda(n,m) F(n,m),
/// relative to the absolute sum of the contributions.
inline double conservation_residual_rel_max(const Trajectory& tr,
                                            const Scheme& scheme,
                                            const ConservationTriple& triple) {
  const CompiledKernel kt = CompiledKernel::compile(triple.density, tr.grid);
  const CompiledKernel kf = CompiledKernel::compile(triple.flux, tr.grid);
  const CompiledKernel kl = CompiledKernel::compile(triple.multiplier, tr.grid);
  const CompiledKernel kr = CompiledKernel::compile(scheme.residual, tr.grid);

  const long first =
      std::max({kt.first_level(tr) + 1, kf.first_level(tr),
                kl.first_level(tr), kr.first_level(tr)});
  const long last = std::min({kt.last_level(tr), kf.last_level(tr),
                              kl.last_level(tr), kr.last_level(tr)});
  double worst = 0.0;
  const bool dirichlet = tr.grid.bc.kind == BcKind::Dirichlet;
  const int m_lo = dirichlet ? 2 : 0;
  const int m_hi = dirichlet ? tr.grid.M - 3 : tr.grid.M - 1;
  for (long n = first; n <= last; ++n)
    for (int m = m_lo; m <= m_hi; ++m) {
      double tn, ts, tp, tps, fn, fs, fp, fps, lv, ls, rv, rs;
      kt.eval_with_scale(tr, n, m, tn, ts);
      kt.eval_with_scale(tr, n - 1, m, tp, tps);
      kf.eval_with_scale(tr, n, m, fn, fs);
      kf.eval_with_scale(tr, n, m - 1, fp, fps);
      kl.eval_with_scale(tr, n, m, lv, ls);
      kr.eval_with_scale(tr, n, m, rv, rs);
      const double resid =
          (tn - tp) / tr.grid.tau + (fn - fp) / tr.grid.h - lv * rv;
      // local magnitude before cancellation: the value itself can vanish
      // at physics zeros while the rounding floor does not
      const double scale = (ts + tps) / tr.grid.tau +
                           (fs + fps) / tr.grid.h + ls * rs + 1e-300;
      worst = std::max(worst, std::abs(resid) / scale);
    }
  return worst;
}

enum class TransformKind { Gauge, Galilei, StretchX, Scale };

inline std::string transform_name(TransformKind t) {
  switch (t) {
    case TransformKind::Gauge: return "gauge";
    case TransformKind::Galilei: return "galilei";
    case TransformKind::StretchX: return "stretch_x";
    case TransformKind::Scale: return "scale";
  }
  return "?";
}

/// Applies a finite symmetry transformation to a whole trajectory and
/// returns the worst relative residual of the scheme on the transformed
/// data. gauge: U += eps; galilei: U += eps * t_n; stretch_x: U += eps*x_m
/// (seam nodes of a periodic grid are skipped, the shift is not periodic);
/// scale: mesh and, for the nonlinear schemes, U are scaled by the
/// parameter.
inline double symmetry_residual(const Trajectory& tr, const Scheme& scheme,
                                TransformKind kind, double param) {
  if (kind == TransformKind::StretchX && !scheme.admits_stretch_x)
    throw Error("stretch_x is not a symmetry of " + scheme.name);
  Trajectory t2 = tr;
  switch (kind) {
    case TransformKind::Gauge:
      for (auto& layer : t2.layers)
        for (auto& v : layer) v += param;
      break;
    case TransformKind::Galilei:
      for (long n = 0; n < t2.layer_count(); ++n) {
        const double dt = param * t2.time_of(n);
        for (auto& v : t2.layers[n]) v += dt;
      }
      break;
    case TransformKind::StretchX:
      for (auto& layer : t2.layers)
        for (int m = 0; m < tr.grid.M; ++m)
          layer[m] += param * tr.grid.node_x(m);
      break;
    case TransformKind::Scale:
      t2.grid.h *= param;
      t2.grid.tau *= param;
      t2.grid.x0 *= param;
      if (scheme.nonlinear)
        for (auto& layer : t2.layers)
          for (auto& v : layer) v *= param;
      break;
  }
  const CompiledKernel k = CompiledKernel::compile(scheme.residual, t2.grid);
  const bool skip_seam =
      kind == TransformKind::StretchX && tr.grid.bc.kind == BcKind::Periodic;
  double worst = 0.0;
  for (long n = k.first_level(t2); n <= k.last_level(t2); ++n)
    for (int m = 0; m < t2.grid.M; ++m) {
      if (skip_seam && (m == 0 || m == t2.grid.M - 1)) continue;
      double v, s;
      k.eval_with_scale(t2, n, m, v, s);
      if (s > 0.0) worst = std::max(worst, std::abs(v) / s);
    }
  return worst;
}

struct ConvergenceRow {
  int M = 0;
  double h = 0.0;
  double error = 0.0;
  std::optional<double> observed_order;  // vs the previous row
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  bool monotone = true;
};

/// Max-norm error against an exact solution at the final time, across
/// refinement levels with a fixed tau/h ratio; observed order is the log2
/// of successive error ratios.
inline ConvergenceTable convergence_exact(
    const Scheme& scheme, const std::vector<int>& levels, double length,
    double final_time, double tau_over_h,
    const std::function<InitialCondition(const Grid1D&)>& make_ic,
    const std::function<double(double, double)>& exact) {
  ConvergenceTable table;
  for (int M : levels) {
    Grid1D g;
    g.M = M;
    g.h = length / M;
    g.tau = tau_over_h * g.h;
    g.bc = Bc::periodic();
    const long steps = std::lround(final_time / g.tau) - 1;
    const Trajectory tr = run(scheme, g, make_ic(g), steps);
    const long n = tr.layer_count() - 1;
    const double t = tr.time_of(n);
    double err = 0.0;
    for (int m = 0; m < M; ++m)
      err = std::max(err, std::abs(tr.layers[n][m] - exact(g.node_x(m), t)));
    ConvergenceRow row{M, g.h, err, std::nullopt};
    if (!table.rows.empty()) {
      row.observed_order = std::log2(table.rows.back().error / err);
      if (err >= table.rows.back().error) table.monotone = false;
    }
    table.rows.push_back(row);
  }
  return table;
}

/// Self-convergence: every level is compared against a finest reference
/// run on the shared nodes (levels must divide the reference M).
inline ConvergenceTable convergence_self(
    const Scheme& scheme, const std::vector<int>& levels, int reference_M,
    double length, double final_time, double tau_over_h,
    const std::function<InitialCondition(const Grid1D&)>& make_ic) {
  auto run_level = [&](int M) {
    Grid1D g;
    g.M = M;
    g.h = length / M;
    g.tau = tau_over_h * g.h;
    g.bc = Bc::periodic();
    const long steps = std::lround(final_time / g.tau) - 1;
    return run(scheme, g, make_ic(g), steps);
  };
  const Trajectory ref = run_level(reference_M);
  const long nref = ref.layer_count() - 1;
  ConvergenceTable table;
  for (int M : levels) {
    if (reference_M % M != 0)
      throw Error("convergence_self: reference level must be a multiple");
    const int stride = reference_M / M;
    const Trajectory tr = run_level(M);
    const long n = tr.layer_count() - 1;
    double err = 0.0;
    for (int m = 0; m < M; ++m)
      err = std::max(err,
                     std::abs(tr.layers[n][m] - ref.layers[nref][m * stride]));
    ConvergenceRow row{M, tr.grid.h, err, std::nullopt};
    if (!table.rows.empty()) {
      row.observed_order = std::log2(table.rows.back().error / err);
      if (err >= table.rows.back().error) table.monotone = false;
    }
    table.rows.push_back(row);
  }
  return table;
}

/// Everything the audit CLI reports for one trajectory.
struct AuditReport {
  std::string scheme;
  std::vector<DriftRecord> drifts;
  double scheme_residual_rel = 0.0;
  std::vector<std::pair<std::string, double>> conservation_residual_rel;
};

inline AuditReport run_audit(const Trajectory& tr, const Scheme& scheme) {
  AuditReport rep;
  rep.scheme = scheme.name;
  rep.scheme_residual_rel = scheme_residual_rel_max(tr, scheme);
  for (const auto& triple : scheme.triples) {
    rep.drifts.push_back(drift_series(tr, triple));
    rep.conservation_residual_rel.emplace_back(
        triple.label, conservation_residual_rel_max(tr, scheme, triple));
  }
  return rep;
}

}  // namespace conslaw
