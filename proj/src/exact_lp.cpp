#include "cfdt/exact_lp.hpp"

#include <stdexcept>

namespace cfdt {

namespace {

// Dense tableau: rows 0..m-1 hold [A | b], row m holds the reduced-cost row
// [cbar | -objective]. basis[i] is the variable occupying row i.
struct Tableau {
  std::vector<std::vector<Rat>> rows;
  std::vector<int> basis;

  int m() const { return static_cast<int>(basis.size()); }
  int cols() const { return static_cast<int>(rows[0].size()) - 1; }

  void pivot(int row, int col) {
    Rat factor = rows[row][col];
    for (Rat& v : rows[row]) v /= factor;
    for (int r = 0; r <= m(); ++r) {
      if (r == row) continue;
      Rat coef = rows[r][col];
      if (sgn(coef) == 0) continue;
      for (std::size_t c = 0; c < rows[r].size(); ++c)
        rows[r][c] -= coef * rows[row][c];
    }
    basis[row] = col;
  }

  // Bland: enter the lowest-index column with positive reduced cost; leave
  // by the minimum ratio, ties broken by the smallest basic variable index.
  // Returns false at optimality.
  bool improve(int usable_cols) {
    int entering = -1;
    for (int j = 0; j < usable_cols; ++j)
      if (sgn(rows[m()][j]) > 0) {
        entering = j;
        break;
      }
    if (entering < 0) return false;

    int leaving = -1;
    Rat best_ratio;
    for (int i = 0; i < m(); ++i) {
      if (sgn(rows[i][entering]) <= 0) continue;
      Rat ratio = rows[i].back() / rows[i][entering];
      if (leaving < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leaving])) {
        leaving = i;
        best_ratio = ratio;
      }
    }
    if (leaving < 0) throw std::runtime_error("linear program is unbounded");
    pivot(leaving, entering);
    return true;
  }
};

}  // namespace

LpSolution lp_maximize(const LpProblem& problem) {
  const int m = static_cast<int>(problem.A.size());
  const int n = static_cast<int>(problem.c.size());
  if (static_cast<int>(problem.b.size()) != m)
    throw std::invalid_argument("lp: row count mismatch");
  for (const auto& row : problem.A)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("lp: column count mismatch");

  Tableau tab;
  tab.basis.assign(m, 0);
  tab.rows.assign(m + 1, std::vector<Rat>(n + m + 1, Rat(0)));
  for (int i = 0; i < m; ++i) {
    bool flip = sgn(problem.b[i]) < 0;
    for (int j = 0; j < n; ++j)
      tab.rows[i][j] = flip ? Rat(-problem.A[i][j]) : problem.A[i][j];
    tab.rows[i][n + i] = Rat(1);
    tab.rows[i][n + m] = flip ? Rat(-problem.b[i]) : problem.b[i];
    tab.basis[i] = n + i;
  }

  // Phase 1: maximize minus the sum of artificial variables. With the
  // artificial basis, the reduced cost of column j is the column sum.
  for (int j = 0; j < n + m + 1; ++j) {
    Rat sum(0);
    for (int i = 0; i < m; ++i) sum += tab.rows[i][j];
    if (j < n || j == n + m) tab.rows[m][j] = sum;
  }
  while (tab.improve(n)) {
  }
  if (sgn(tab.rows[m][n + m]) != 0)
    throw std::runtime_error("linear program is infeasible");

  // Drive leftover artificials out of the basis; an all-zero row is a
  // redundant constraint and is dropped.
  for (int i = static_cast<int>(tab.basis.size()) - 1; i >= 0; --i) {
    if (tab.basis[i] < n) continue;
    int col = -1;
    for (int j = 0; j < n; ++j)
      if (sgn(tab.rows[i][j]) != 0) {
        col = j;
        break;
      }
    if (col >= 0) {
      tab.pivot(i, col);
    } else {
      tab.rows.erase(tab.rows.begin() + i);
      tab.basis.erase(tab.basis.begin() + i);
    }
  }

  // Phase 2: install the true objective row and re-optimize.
  for (int j = 0; j < n + m + 1; ++j)
    tab.rows[tab.m()][j] = j < n ? problem.c[j] : Rat(0);
  for (int i = 0; i < tab.m(); ++i) {
    Rat coef = tab.rows[tab.m()][tab.basis[i]];
    if (sgn(coef) == 0) continue;
    for (int j = 0; j < n + m + 1; ++j)
      tab.rows[tab.m()][j] -= coef * tab.rows[i][j];
  }
  while (tab.improve(n)) {
  }

  LpSolution solution;
  solution.x.assign(n, Rat(0));
  for (int i = 0; i < tab.m(); ++i)
    if (tab.basis[i] < n) solution.x[tab.basis[i]] = tab.rows[i].back();
  solution.objective = Rat(0);
  for (int j = 0; j < n; ++j)
    solution.objective += problem.c[j] * solution.x[j];
  return solution;
}

LpSolution lp_minimize(const LpProblem& problem) {
  LpProblem negated = problem;
  for (Rat& coef : negated.c) coef = -coef;
  LpSolution solution = lp_maximize(negated);
  solution.objective = -solution.objective;
  return solution;
}

}  // namespace cfdt
