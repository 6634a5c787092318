#pragma once

#include <map>
#include <optional>
#include <vector>

#include "conslaw/rational.hpp"

namespace conslaw {

/// Sparse matrix over the exact rationals. Rows are column->value maps;
/// missing entries are zero.
struct SparseMatrix {
  int cols = 0;
  std::vector<std::map<int, Rational>> rows;

  void add_row(std::map<int, Rational> row) { rows.push_back(std::move(row)); }
};

namespace detail {

/// In-place reduced row echelon form. Columns are processed in ascending
/// order, which fixes the pivot columns; the reduced form itself is unique,
/// so every caller sees a deterministic result. Returns the pivot columns
/// in ascending order together with the owning row index.
inline std::vector<std::pair<int, int>> rref(SparseMatrix& a) {
  std::vector<std::pair<int, int>> pivots;  // (col, row)
  std::vector<bool> used(a.rows.size(), false);
  for (int col = 0; col < a.cols; ++col) {
    int pivot_row = -1;
    std::size_t pivot_nnz = 0;
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
      if (used[r]) continue;
      auto it = a.rows[r].find(col);
      if (it == a.rows[r].end() || it->second == 0) continue;
      if (pivot_row < 0 || a.rows[r].size() < pivot_nnz) {
        pivot_row = static_cast<int>(r);
        pivot_nnz = a.rows[r].size();
      }
    }
    if (pivot_row < 0) continue;
    used[pivot_row] = true;
    pivots.emplace_back(col, pivot_row);

    auto& prow = a.rows[pivot_row];
    const Rational inv = Rational(1) / prow.at(col);
    if (inv != 1)
      for (auto& [c, v] : prow) v *= inv;
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
      if (static_cast<int>(r) == pivot_row) continue;
      auto it = a.rows[r].find(col);
      if (it == a.rows[r].end() || it->second == 0) continue;
      const Rational f = it->second;
      for (const auto& [c, v] : prow) {
        auto [jt, inserted] = a.rows[r].emplace(c, 0);
        jt->second -= f * v;
        if (jt->second == 0) a.rows[r].erase(jt);
      }
    }
  }
  return pivots;
}

}  // namespace detail

/// Basis of the right nullspace of A, one dense vector per free column,
/// generated in ascending free-column order (the reduced-row-echelon basis).
inline std::vector<std::vector<Rational>> nullspace(SparseMatrix a) {
  const auto pivots = detail::rref(a);
  std::vector<int> pivot_of_col(a.cols, -1);
  for (const auto& [col, row] : pivots) pivot_of_col[col] = row;

  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < a.cols; ++free) {
    if (pivot_of_col[free] >= 0) continue;
    std::vector<Rational> v(a.cols, Rational(0));
    v[free] = 1;
    for (const auto& [col, row] : pivots) {
      auto it = a.rows[row].find(free);
      if (it != a.rows[row].end()) v[col] = -it->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Rank of the matrix.
inline int rank(SparseMatrix a) {
  return static_cast<int>(detail::rref(a).size());
}

/// One exact solution of A x = b with every free unknown set to zero (the
/// reduced-row-echelon representative), or nullopt when the system is
/// infeasible. b is indexed by row.
inline std::optional<std::vector<Rational>> solve_particular(
    SparseMatrix a, const std::map<int, Rational>& b) {
  const int bcol = a.cols;
  for (const auto& [r, v] : b) {
    if (r < 0 || r >= static_cast<int>(a.rows.size()))
      throw Error("solve_particular: rhs row out of range");
    if (v != 0) a.rows[r][bcol] = v;
  }
  a.cols += 1;
  const auto pivots = detail::rref(a);
  std::vector<Rational> x(bcol, Rational(0));
  for (const auto& [col, row] : pivots) {
    if (col == bcol) return std::nullopt;  // a row reduced to 0 = nonzero
    auto it = a.rows[row].find(bcol);
    if (it != a.rows[row].end()) x[col] = it->second;
  }
  return x;
}

}  // namespace conslaw
