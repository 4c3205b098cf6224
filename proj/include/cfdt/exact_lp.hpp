#ifndef CFDT_EXACT_LP_HPP
#define CFDT_EXACT_LP_HPP

#include <vector>

#include "cfdt/rational.hpp"

namespace cfdt {

// Equality-form linear program: optimize c.x subject to A x = b, x >= 0.
// Rows may be linearly dependent; redundant rows are dropped during phase 1.
struct LpProblem {
  std::vector<std::vector<Rat>> A;
  std::vector<Rat> b;
  std::vector<Rat> c;
};

struct LpSolution {
  Rat objective;
  std::vector<Rat> x;  // an optimal vertex (basic feasible solution)
};

// Two-phase primal simplex over exact rationals with Bland's anticycling
// rule; fully deterministic. Throws std::runtime_error on infeasible or
// unbounded problems.
LpSolution lp_maximize(const LpProblem& problem);
LpSolution lp_minimize(const LpProblem& problem);

}  // namespace cfdt

#endif
