#ifndef CFDT_IDENTIFICATION_HPP
#define CFDT_IDENTIFICATION_HPP

#include "cfdt/model.hpp"

namespace cfdt {

// Per-decision outcome marginals at one covariate point; the object the
// coupling polytope is defined against.
struct MarginalsSpec {
  ProblemSpace space;
  std::vector<std::vector<Rat>> marginals;  // marginals[k][v] = P(Y(k) = v)
  int covariate = 0;

  // Extracts marginals from a state degenerate at a single covariate.
  static MarginalsSpec from_state(const State& state);
};

// Sharp range of the expected utility of dirac(d) over every coupling
// consistent with the marginals, together with couplings attaining each end.
struct BoundResult {
  Rat lower;
  Rat upper;
  State argmin_state;
  State argmax_state;
};

BoundResult sharp_bounds(const MarginalsSpec& spec, int d,
                         const UtilityTable& utility);

struct RankingBounds {
  std::vector<BoundResult> per_decision;
  // Decisions whose lower bound strictly exceeds every rival's upper bound.
  std::vector<int> dominant;
  bool has_recommendation() const { return !dominant.empty(); }
};

RankingBounds bound_policy_ranking(const MarginalsSpec& spec,
                                   const UtilityTable& utility);

// Maximum number of LP variables (|Y|^K); configurable through the
// CFDT_LP_VAR_CAP environment variable.
long lp_variable_cap();

}  // namespace cfdt

#endif
