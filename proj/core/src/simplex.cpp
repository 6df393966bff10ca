#include "simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace infotop::detail {

namespace {

constexpr double kPivotEps = 1e-11;

// Tableau: m constraint rows plus an objective row, rhs in the last column.
struct Tableau {
  int m, ncols;
  std::vector<std::vector<double>> t;  // (m+1) x (ncols+1)
  std::vector<int> basis;              // basic variable per row

  Tableau(int m_, int ncols_)
      : m(m_), ncols(ncols_),
        t(m_ + 1, std::vector<double>(ncols_ + 1, 0.0)), basis(m_, -1) {}

  void pivot(int row, int col) {
    const double p = t[row][col];
    for (int j = 0; j <= ncols; ++j) t[row][j] /= p;
    for (int i = 0; i <= m; ++i) {
      if (i == row) continue;
      const double f = t[i][col];
      if (f == 0.0) continue;
      for (int j = 0; j <= ncols; ++j) t[i][j] -= f * t[row][j];
    }
    basis[row] = col;
  }

  // Bland's rule: entering = lowest-index improving column, leaving = lowest
  // basic index among the minimum-ratio rows. Returns false at optimality.
  bool step(int usable_cols) {
    int col = -1;
    for (int j = 0; j < usable_cols; ++j)
      if (t[m][j] < -kPivotEps) {
        col = j;
        break;
      }
    if (col < 0) return false;
    int row = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (t[i][col] <= kPivotEps) continue;
      const double ratio = t[i][ncols] / t[i][col];
      if (ratio < best_ratio - 1e-12 ||
          (ratio < best_ratio + 1e-12 && (row < 0 || basis[i] < basis[row]))) {
        best_ratio = ratio;
        row = i;
      }
    }
    if (row < 0) throw std::runtime_error("simplex: unbounded program");
    pivot(row, col);
    return true;
  }
};

}  // namespace

LpResult solve_lp_min(const std::vector<std::vector<double>>& A,
                      const std::vector<double>& b,
                      const std::vector<double>& c) {
  const int m = static_cast<int>(A.size());
  const int n = static_cast<int>(c.size());
  for (int i = 0; i < m; ++i)
    if (b[i] < 0.0) throw std::runtime_error("simplex: negative rhs");

  // Phase 1: artificial variables n..n+m-1, minimize their sum.
  Tableau tab(m, n + m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) tab.t[i][j] = A[i][j];
    tab.t[i][n + i] = 1.0;
    tab.t[i][n + m] = b[i];
    tab.basis[i] = n + i;
  }
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += A[i][j];
    tab.t[m][j] = -s;
  }
  double rhs_sum = 0.0;
  for (int i = 0; i < m; ++i) rhs_sum += b[i];
  tab.t[m][n + m] = -rhs_sum;

  while (tab.step(n + m)) {
  }
  if (std::abs(tab.t[m][n + m]) > 1e-8) return {false, 0.0, {}};

  // Drive leftover artificial basics out; rows that cannot pivot are
  // redundant and harmless (their rhs is ~0 after phase 1).
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] < n) continue;
    for (int j = 0; j < n; ++j)
      if (std::abs(tab.t[i][j]) > kPivotEps) {
        tab.pivot(i, j);
        break;
      }
  }

  // Phase 2: real objective expressed over the current basis.
  for (int j = 0; j <= n + m; ++j) tab.t[m][j] = 0.0;
  for (int j = 0; j < n; ++j) tab.t[m][j] = c[j];
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] >= n) continue;
    const double cb = c[tab.basis[i]];
    if (cb == 0.0) continue;
    for (int j = 0; j <= n + m; ++j) tab.t[m][j] -= cb * tab.t[i][j];
  }
  // Artificial columns stay out of phase 2.
  while (tab.step(n)) {
  }

  LpResult out;
  out.feasible = true;
  out.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i)
    if (tab.basis[i] < n) out.x[tab.basis[i]] = tab.t[i][n + m];
  out.value = 0.0;
  for (int j = 0; j < n; ++j) out.value += c[j] * out.x[j];
  return out;
}

}  // namespace infotop::detail
