#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "conslaw/rational.hpp"

namespace conslaw {

enum class BcKind { Periodic, Dirichlet };

struct Bc {
  BcKind kind = BcKind::Periodic;
  double left = 0.0;
  double right = 0.0;
  static Bc periodic() { return {BcKind::Periodic, 0.0, 0.0}; }
  static Bc dirichlet(double l, double r) { return {BcKind::Dirichlet, l, r}; }
};

/// Uniform 1D mesh. For periodic boundaries the M nodes are
/// x_m = x0 + m h covering a domain of length M h; for Dirichlet the M
/// interior nodes sit at x0 + (m+1) h between boundary nodes at x0 and
/// x0 + (M+1) h whose values are held by the boundary condition.
struct Grid1D {
  int M = 0;
  double h = 0.0;
  double tau = 0.0;
  double x0 = 0.0;
  Bc bc;

  void validate() const {
    if (M < 3) throw Error("Grid1D: need at least 3 nodes");
    if (!(h > 0.0) || !(tau > 0.0))
      throw Error("Grid1D: mesh steps must be positive");
  }
  double node_x(int m) const {
    return bc.kind == BcKind::Periodic ? x0 + m * h : x0 + (m + 1) * h;
  }
  double length() const {
    return bc.kind == BcKind::Periodic ? M * h : (M + 1) * h;
  }
};

/// Two consecutive solution layers; n is the time index of `curr`.
struct SolutionState {
  long n = 0;
  std::vector<double> prev;
  std::vector<double> curr;
};

struct Trajectory {
  Grid1D grid;
  std::string scheme;
  std::string ic_description;
  unsigned seed = 0;
  std::vector<std::vector<double>> layers;  // layers[n][m], t_n = n*tau

  long layer_count() const { return static_cast<long>(layers.size()); }
  double time_of(long n) const { return n * grid.tau; }
};

/// An initial state u(x,0) = u0(x), u_t(x,0) = v0(x).
struct InitialCondition {
  std::string description;
  std::function<double(double)> u0;
  std::function<double(double)> v0;
};

inline InitialCondition ic_zero() {
  return {"zero", [](double) { return 0.0; }, [](double) { return 0.0; }};
}

inline InitialCondition ic_affine(double a, double b) {
  return {"affine(" + std::to_string(a) + "," + std::to_string(b) + ")",
          [a, b](double x) { return a + b * x; }, [](double) { return 0.0; }};
}

/// Right-moving traveling wave A sin(2 pi k (x - t) / L): u0 and the
/// matching v0 = -A w cos(...). Exact solution of the linear scheme's PDE.
inline InitialCondition ic_sine(double k, double amplitude, double length) {
  const double w = 2.0 * M_PI * k / length;
  return {"sine(" + std::to_string(k) + "," + std::to_string(amplitude) + ")",
          [w, amplitude](double x) { return amplitude * std::sin(w * x); },
          [w, amplitude](double x) { return -amplitude * w * std::cos(w * x); }};
}

inline InitialCondition ic_gaussian(double center, double width) {
  return {"gaussian(" + std::to_string(center) + "," + std::to_string(width) +
              ")",
          [center, width](double x) {
            const double z = (x - center) / width;
            return std::exp(-z * z);
          },
          [](double) { return 0.0; }};
}

/// Smooth periodic random data from a fixed seed: a short Fourier sum with
/// 1/j^3 spectral decay for u0 and an independent draw for v0. The
/// amplitude keeps |u_x| well below 1 so the nonlinear wave speed
/// sqrt(1 + u_x^2) stays CFL-safe for the explicit schemes at tau = h/2.
/// Bit-for-bit reproducible given (seed, length).
inline InitialCondition ic_random_smooth(unsigned seed, double length,
                                         double x0 = 0.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const int modes = 4;
  std::vector<double> as(modes), bs(modes), cs(modes), ds(modes);
  for (int j = 0; j < modes; ++j) as[j] = uni(rng);
  for (int j = 0; j < modes; ++j) bs[j] = uni(rng);
  for (int j = 0; j < modes; ++j) cs[j] = uni(rng);
  for (int j = 0; j < modes; ++j) ds[j] = uni(rng);
  const double base = 2.0 * M_PI / length;
  auto series = [base, x0, modes](const std::vector<double>& sc,
                                  const std::vector<double>& cc, double amp,
                                  double x) {
    double s = 0.0;
    for (int j = 0; j < modes; ++j) {
      const double w = base * (j + 1);
      const double decay = 1.0 / ((j + 1) * (j + 1) * (j + 1));
      s += amp * decay *
           (sc[j] * std::sin(w * (x - x0)) + cc[j] * std::cos(w * (x - x0)));
    }
    return s;
  };
  return {"random_smooth(" + std::to_string(seed) + ")",
          [=](double x) { return series(as, bs, 0.08, x); },
          [=](double x) { return series(cs, ds, 0.08, x); }};
}

}  // namespace conslaw
