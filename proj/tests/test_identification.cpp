#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>

#include "cfdt/exact_lp.hpp"
#include "cfdt/identification.hpp"
#include "cfdt/valuation.hpp"
#include "test_support.hpp"

using namespace cfdt;

namespace {

ProblemSpace binary2() { return ProblemSpace(2, OutcomeSpace::binary()); }

UtilityTable harm_benefit(const ProblemSpace& space) {
  return UtilityTable::from_function(
      space, [](int d, std::span<const int> yvec, int) {
        if (d == 0) return yvec[0] > yvec[1] ? Rat(1) : Rat(0);
        return yvec[0] < yvec[1] ? make_rat(1, 2) : Rat(0);
      });
}

MarginalsSpec roulette_marginals() {
  return MarginalsSpec{binary2(),
                       {{make_rat(1, 6), make_rat(5, 6)},
                        {make_rat(1, 7), make_rat(6, 7)}},
                       0};
}

// one-cell indicator at a fixed decision
UtilityTable cell_indicator(const ProblemSpace& space, int decision, int y0,
                            int y1) {
  return UtilityTable::from_function(
      space, [=](int d, std::span<const int> yvec, int) {
        return d == decision && yvec[0] == y0 && yvec[1] == y1 ? Rat(1)
                                                               : Rat(0);
      });
}

}  // namespace

TEST_CASE("simplex on a dense transportation program") {
  // 2x2 transportation with marginals (1/3, 2/3) and (1/4, 3/4); maximize the
  // diagonal cell mass P(1,1): classic min(2/3, 3/4) answer
  LpProblem lp;
  lp.A = {{Rat(1), Rat(1), Rat(0), Rat(0)},
          {Rat(0), Rat(0), Rat(1), Rat(1)},
          {Rat(1), Rat(0), Rat(1), Rat(0)},
          {Rat(0), Rat(1), Rat(0), Rat(1)}};
  lp.b = {make_rat(1, 3), make_rat(2, 3), make_rat(1, 4), make_rat(3, 4)};
  lp.c = {Rat(0), Rat(0), Rat(0), Rat(1)};
  LpSolution high = lp_maximize(lp);
  CHECK(high.objective == make_rat(2, 3));
  LpSolution low = lp_minimize(lp);
  CHECK(low.objective == make_rat(5, 12));  // max(0, 2/3 + 3/4 - 1)
  // the reported point is primal feasible
  for (int row = 0; row < 4; ++row) {
    Rat total(0);
    for (int col = 0; col < 4; ++col) total += lp.A[row][col] * high.x[col];
    CHECK(total == lp.b[row]);
  }
}

TEST_CASE("simplex detects infeasible and unbounded programs") {
  LpProblem infeasible;
  infeasible.A = {{Rat(1), Rat(1)}, {Rat(1), Rat(1)}};
  infeasible.b = {Rat(1), Rat(2)};
  infeasible.c = {Rat(1), Rat(0)};
  CHECK_THROWS_AS(lp_maximize(infeasible), std::runtime_error);

  LpProblem unbounded;
  unbounded.A = {{Rat(1), Rat(-1)}};
  unbounded.b = {Rat(1)};
  unbounded.c = {Rat(0), Rat(1)};
  CHECK_THROWS_AS(lp_maximize(unbounded), std::runtime_error);
}

TEST_CASE("cell-probability bounds match the closed-form envelope") {
  // for binary marginals, P(benefit cell) ranges between max(0, p1 - p0) and
  // min(1 - p0, p1) where p_k is the success probability of coordinate k
  std::mt19937 rng(3);
  ProblemSpace space = binary2();
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Rat> m0 = testing::random_distribution(rng, 2);
    std::vector<Rat> m1 = testing::random_distribution(rng, 2);
    MarginalsSpec spec{space, {m0, m1}, 0};
    BoundResult bounds = sharp_bounds(spec, 0, cell_indicator(space, 0, 0, 1));
    Rat p0 = m0[1], p1 = m1[1];
    Rat lo = std::max(Rat(0), Rat(p1 - p0));
    Rat hi = std::min(Rat(1 - p0), p1);
    CHECK(bounds.lower == lo);
    CHECK(bounds.upper == hi);
  }
}

TEST_CASE("roulette-style bounds on the benefit and harm functionals") {
  MarginalsSpec spec = roulette_marginals();
  UtilityTable utility = harm_benefit(spec.space);

  BoundResult harm = sharp_bounds(spec, 0, utility);
  CHECK(harm.lower == 0);
  CHECK(harm.upper == make_rat(1, 7));

  BoundResult benefit = sharp_bounds(spec, 1, utility);
  CHECK(benefit.lower == make_rat(1, 84));
  CHECK(benefit.upper == make_rat(1, 12));

  SUBCASE("attaining couplings re-verify the marginals and the value") {
    for (const BoundResult* bound : {&harm, &benefit}) {
      Marginals lo_m = marginals(bound->argmin_state);
      Marginals hi_m = marginals(bound->argmax_state);
      for (int k = 0; k < 2; ++k) {
        CHECK(lo_m.outcome[k] == spec.marginals[k]);
        CHECK(hi_m.outcome[k] == spec.marginals[k]);
      }
    }
    CHECK(policy_value(Policy::dirac(spec.space, 1), benefit.argmin_state,
                       utility) == benefit.lower);
    CHECK(policy_value(Policy::dirac(spec.space, 1), benefit.argmax_state,
                       utility) == benefit.upper);
  }

  SUBCASE("overlapping intervals yield no recommendation") {
    RankingBounds ranking = bound_policy_ranking(spec, utility);
    CHECK(ranking.dominant.empty());
    CHECK_FALSE(ranking.has_recommendation());
  }
}

TEST_CASE("bounds agree with brute-force vertex enumeration (property)") {
  std::mt19937 rng(11);
  ProblemSpace space(2, OutcomeSpace::numeric({Rat(0), Rat(1), Rat(2)}));
  for (int trial = 0; trial < 25; ++trial) {
    MarginalsSpec spec{space,
                       {testing::random_distribution(rng, 3),
                        testing::random_distribution(rng, 3)},
                       0};
    UtilityTable utility = testing::random_utility(rng, space);
    for (int d = 0; d < 2; ++d) {
      BoundResult bounds = sharp_bounds(spec, d, utility);
      auto [lo, hi] = testing::vertex_bounds(spec, d, utility);
      CHECK(bounds.lower == lo);
      CHECK(bounds.upper == hi);
    }
  }
}

TEST_CASE("every consistent coupling lies inside the bounds (property)") {
  std::mt19937 rng(19);
  ProblemSpace space = binary2();
  for (int trial = 0; trial < 25; ++trial) {
    MarginalsSpec spec{space,
                       {testing::random_distribution(rng, 2),
                        testing::random_distribution(rng, 2)},
                       0};
    UtilityTable utility = testing::random_utility(rng, space);
    BoundResult bounds = sharp_bounds(spec, 0, utility);
    // the independent coupling and all polytope vertices
    std::vector<std::vector<Rat>> points = testing::coupling_vertices(spec);
    State independent = independent_coupling(space, spec.marginals);
    points.push_back(independent.mass);
    for (const auto& point : points) {
      Rat value(0);
      for (long yi = 0; yi < space.outcome_vector_count(); ++yi)
        value += utility.at(0, yi, 0) * point[yi];
      CHECK(bounds.lower <= value);
      CHECK(value <= bounds.upper);
    }
  }
}

TEST_CASE("additive utilities are point identified") {
  std::mt19937 rng(23);
  for (int decisions : {2, 3}) {
    ProblemSpace space(decisions, OutcomeSpace::binary());
    for (int trial = 0; trial < 10; ++trial) {
      UtilityTable additive = testing::random_additive_utility(rng, space);
      std::vector<std::vector<Rat>> ms;
      for (int k = 0; k < decisions; ++k)
        ms.push_back(testing::random_distribution(rng, 2));
      MarginalsSpec spec{space, ms, 0};
      RankingBounds ranking = bound_policy_ranking(spec, additive);
      for (const BoundResult& bound : ranking.per_decision)
        CHECK(bound.lower == bound.upper);
    }
  }
}

TEST_CASE("non-additive tables separate somewhere (search)") {
  std::mt19937 rng(29);
  ProblemSpace space = binary2();
  UtilityTable utility = harm_benefit(space);
  bool separated = false;
  for (int trial = 0; trial < 20 && !separated; ++trial) {
    MarginalsSpec spec{space,
                       {testing::random_distribution(rng, 2),
                        testing::random_distribution(rng, 2)},
                       0};
    BoundResult bounds = sharp_bounds(spec, 0, utility);
    separated = bounds.lower < bounds.upper;
  }
  CHECK(separated);
}

TEST_CASE("variable cap guard") {
  ProblemSpace space(2, OutcomeSpace::numeric({Rat(0), Rat(1), Rat(2), Rat(3)}));
  MarginalsSpec spec{space,
                     {{Rat(1), Rat(0), Rat(0), Rat(0)},
                      {Rat(1), Rat(0), Rat(0), Rat(0)}},
                     0};
  setenv("CFDT_LP_VAR_CAP", "10", 1);
  CHECK_THROWS_AS(sharp_bounds(spec, 0, UtilityTable::zero(space)),
                  std::length_error);
  setenv("CFDT_LP_VAR_CAP", "bogus", 1);
  CHECK_THROWS_AS(lp_variable_cap(), std::invalid_argument);
  unsetenv("CFDT_LP_VAR_CAP");
  CHECK(lp_variable_cap() == 1'000'000);
}

TEST_CASE("degenerate marginals pin the coupling completely") {
  ProblemSpace space = binary2();
  MarginalsSpec spec{space, {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}}, 0};
  UtilityTable utility = harm_benefit(space);
  BoundResult bounds = sharp_bounds(spec, 0, utility);
  CHECK(bounds.lower == bounds.upper);
  CHECK(bounds.lower == 1);  // the harmed cell carries all the mass
}
