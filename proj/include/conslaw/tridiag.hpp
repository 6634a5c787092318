#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "conslaw/rational.hpp"

namespace conslaw {

/// Thomas elimination for A x = rhs with A tridiagonal; sub[i] is the
/// coefficient of x[i-1] in row i, super[i] that of x[i+1]. No pivoting: a
/// vanishing pivot raises (the stepper matrices are strictly diagonally
/// dominant, so this never triggers there).
inline std::vector<double> solve_tridiagonal(std::span<const double> sub,
                                             std::span<const double> diag,
                                             std::span<const double> super,
                                             std::span<const double> rhs) {
  const std::size_t n = diag.size();
  if (n == 0 || sub.size() != n || super.size() != n || rhs.size() != n)
    throw Error("solve_tridiagonal: inconsistent band sizes");
  std::vector<double> c(n), d(n);
  double piv = diag[0];
  if (piv == 0.0) throw Error("solve_tridiagonal: zero pivot in row 0");
  c[0] = super[0] / piv;
  d[0] = rhs[0] / piv;
  for (std::size_t i = 1; i < n; ++i) {
    piv = diag[i] - sub[i] * c[i - 1];
    if (piv == 0.0)
      throw Error("solve_tridiagonal: zero pivot in row " + std::to_string(i));
    c[i] = super[i] / piv;
    d[i] = (rhs[i] - sub[i] * d[i - 1]) / piv;
  }
  std::vector<double> x(n);
  x[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

/// Wrap-around corner entries of a cyclic tridiagonal matrix:
/// upper_right = A[0][n-1], lower_left = A[n-1][0].
struct CornerTerms {
  double upper_right = 0.0;
  double lower_left = 0.0;
};

/// Cyclic tridiagonal solve via a rank-one correction of the non-cyclic
/// elimination (Sherman-Morrison): A_cyc = A' + u v^T with A' tridiagonal.
inline std::vector<double> solve_tridiagonal_cyclic(
    std::span<const double> sub, std::span<const double> diag,
    std::span<const double> super, CornerTerms corners,
    std::span<const double> rhs) {
  const std::size_t n = diag.size();
  if (n < 3)
    throw Error("solve_tridiagonal_cyclic: need at least 3 unknowns");
  if (corners.upper_right == 0.0 && corners.lower_left == 0.0)
    return solve_tridiagonal(sub, diag, super, rhs);

  const double alpha = corners.lower_left;
  const double beta = corners.upper_right;
  // gamma sized with the diagonal to keep the corrected matrix well scaled
  const double gamma = -diag[0];
  if (gamma == 0.0)
    throw Error("solve_tridiagonal_cyclic: zero leading diagonal");

  std::vector<double> d2(diag.begin(), diag.end());
  d2[0] -= gamma;
  d2[n - 1] -= alpha * beta / gamma;
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = alpha;

  const auto y = solve_tridiagonal(sub, d2, super, rhs);
  const auto z = solve_tridiagonal(sub, d2, super, u);

  // v = (1, 0, ..., 0, beta/gamma)
  const double vy = y[0] + beta / gamma * y[n - 1];
  const double vz = z[0] + beta / gamma * z[n - 1];
  const double denom = 1.0 + vz;
  if (denom == 0.0 || !std::isfinite(denom))
    throw Error("solve_tridiagonal_cyclic: singular rank-one correction");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = y[i] - vy / denom * z[i];
  return x;
}

}  // namespace conslaw
