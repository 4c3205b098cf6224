#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

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

State roulette() {
  return independent_coupling(binary2(), {{make_rat(1, 6), make_rat(5, 6)},
                                          {make_rat(1, 7), make_rat(6, 7)}});
}

ProblemSpace money_space() {
  return ProblemSpace(2, OutcomeSpace::numeric({Rat(0), Rat(3000), Rat(4000)}));
}

// first-experiment and second-experiment joint states
State money_state_1() {
  return independent_coupling(
      money_space(), {{make_rat(1, 5), Rat(0), make_rat(4, 5)},
                      {Rat(0), Rat(1), Rat(0)}});
}

State money_state_2() {
  return independent_coupling(
      money_space(), {{make_rat(4, 5), Rat(0), make_rat(1, 5)},
                      {make_rat(3, 4), make_rat(1, 4), Rat(0)}});
}

}  // namespace

TEST_CASE("expected utility against a four-cell hand enumeration") {
  State state = roulette();
  UtilityTable utility = harm_benefit(state.space);

  // oracle: walk the four joint cells directly
  Rat oracle0(0), oracle1(0);
  for (int y0 = 0; y0 < 2; ++y0)
    for (int y1 = 0; y1 < 2; ++y1) {
      const int yvec[] = {y0, y1};
      long yi = state.space.yvec_index(yvec);
      oracle0 += utility.at(0, yi, 0) * state.at(yi, 0);
      oracle1 += utility.at(1, yi, 0) * state.at(yi, 0);
    }
  CHECK(oracle0 == make_rat(5, 42));
  CHECK(oracle1 == make_rat(1, 14));

  CHECK(policy_value(Policy::dirac(state.space, 0), state, utility) == oracle0);
  CHECK(policy_value(Policy::dirac(state.space, 1), state, utility) == oracle1);
  CHECK(Rat(oracle1 - oracle0) == make_rat(-1, 21));

  SUBCASE("zero utility values to zero") {
    Law law = induced_law(Policy::dirac(state.space, 0), state);
    CHECK(expected_utility(law, UtilityTable::zero(state.space)) == 0);
  }
}

TEST_CASE("compare is reflexive and ordered by exact values") {
  State state = roulette();
  UtilityTable utility = harm_benefit(state.space);
  Law left = induced_law(Policy::dirac(state.space, 0), state);
  Law right = induced_law(Policy::dirac(state.space, 1), state);

  Preference self = compare(left, left, utility);
  CHECK(self.verdict == Verdict::Indifferent);

  Preference pref = compare(left, right, utility);
  CHECK(pref.verdict == Verdict::PrefersLeft);
  CHECK(pref.left_value == make_rat(5, 42));
  CHECK(pref.right_value == make_rat(1, 14));
}

TEST_CASE("affine transformations") {
  State state = roulette();
  UtilityTable utility = harm_benefit(state.space);

  SUBCASE("identity") {
    CHECK(affine_transform(utility, Rat(1), Rat(0)).value == utility.value);
  }
  SUBCASE("scale doubles the value gap, same sign") {
    UtilityTable doubled = affine_transform(utility, Rat(2), Rat(0));
    Law l0 = induced_law(Policy::dirac(state.space, 0), state);
    Law l1 = induced_law(Policy::dirac(state.space, 1), state);
    Rat gap = expected_utility(l1, doubled) - expected_utility(l0, doubled);
    CHECK(gap == make_rat(-2, 21));
  }
  SUBCASE("nonpositive scale rejected") {
    CHECK_THROWS_AS(affine_transform(utility, Rat(0), Rat(1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(affine_transform(utility, Rat(-2), Rat(0)),
                    std::invalid_argument);
  }
  SUBCASE("verdicts survive any positive affine map (property)") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
      ProblemSpace space(2, OutcomeSpace::numeric({Rat(0), Rat(1), Rat(3)}));
      UtilityTable u = testing::random_utility(rng, space);
      Law p = testing::random_law(rng, space);
      Law q = testing::random_law(rng, space);
      Rat scale = testing::random_rat(rng, 1, 5, 3);
      Rat shift = testing::random_rat(rng);
      UtilityTable mapped = affine_transform(u, scale, shift);
      CHECK(compare(p, q, u).verdict == compare(p, q, mapped).verdict);
    }
  }
}

TEST_CASE("expected utility is linear in mixtures (property)") {
  std::mt19937 rng(13);
  ProblemSpace space(3, OutcomeSpace::binary());
  for (int trial = 0; trial < 200; ++trial) {
    UtilityTable u = testing::random_utility(rng, space);
    Law p = testing::random_law(rng, space);
    Law q = testing::random_law(rng, space);
    std::uniform_int_distribution<int> grid(0, 8);
    Rat alpha = make_rat(grid(rng), 8);
    Rat mixed = expected_utility(mix2(p, q, alpha), u);
    Rat combined = alpha * expected_utility(p, u) +
                   (Rat(1) - alpha) * expected_utility(q, u);
    CHECK(mixed == combined);
  }
}

TEST_CASE("regret utility freezes the evaluated table exactly") {
  ProblemSpace space = money_space();
  UtilityTable bell = bell_utility(space, 0.003);

  SUBCASE("lambda must be positive") {
    CHECK_THROWS_AS(bell_utility(space, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(bell_utility(space, -1.0), std::invalid_argument);
  }

  SUBCASE("no gap means no regret term") {
    // equal coordinates leave exactly the outcome value
    for (int v = 0; v < 3; ++v) {
      const int yvec[] = {v, v};
      CHECK(bell.at(0, space.yvec_index(yvec), 0) == space.outcomes.values[v]);
    }
  }

  SUBCASE("cells match a direct double-precision oracle") {
    auto oracle = [](double own, double other) {
      return own + 1.0 - std::exp(-0.003 * (own - other));
    };
    const int yvec[] = {2, 1};  // 4000 vs 3000
    CHECK(bell.at(0, space.yvec_index(yvec), 0) ==
          rat_from_double(oracle(4000, 3000)));
    CHECK(bell.at(1, space.yvec_index(yvec), 0) ==
          rat_from_double(oracle(3000, 4000)));
  }
}

TEST_CASE("regret utility reproduces the observed binary choice pattern") {
  ProblemSpace space = money_space();
  UtilityTable bell = bell_utility(space, 0.003);
  State p1 = money_state_1();
  State p2 = money_state_2();

  Rat v10 = policy_value(Policy::dirac(space, 0), p1, bell);
  Rat v11 = policy_value(Policy::dirac(space, 1), p1, bell);
  Rat v20 = policy_value(Policy::dirac(space, 0), p2, bell);
  Rat v21 = policy_value(Policy::dirac(space, 1), p2, bell);

  CHECK(v11 > v10);
  CHECK(v10 > v20);
  CHECK(v20 > v21);

  // derived magnitudes from the independent-coupling enumeration
  CHECK(std::abs(v11.get_d() - 2984.9) < 0.1);
  CHECK(std::abs(v10.get_d() - 1580.3) < 0.1);
  CHECK(std::abs(v20.get_d() + 820.2) < 0.1);
  CHECK(std::abs(v21.get_d() + 23663.8) < 0.1);

  SUBCASE("second-experiment comparison is strict for this lambda") {
    Law l20 = induced_law(Policy::dirac(space, 0), p2);
    Law l21 = induced_law(Policy::dirac(space, 1), p2);
    CHECK(compare(l20, l21, bell).verdict == Verdict::PrefersLeft);
  }
}

TEST_CASE("four-option regret utility ranks the options as observed") {
  ProblemSpace space(4, OutcomeSpace::numeric({Rat(0), Rat(3000), Rat(4000)}));
  UtilityTable bell = bell_utility(space, 0.002);
  State joint = independent_coupling(
      space, {{make_rat(1, 5), Rat(0), make_rat(4, 5)},
              {Rat(0), Rat(1), Rat(0)},
              {make_rat(4, 5), Rat(0), make_rat(1, 5)},
              {make_rat(3, 4), make_rat(1, 4), Rat(0)}});
  std::vector<Rat> values;
  for (int d = 0; d < 4; ++d)
    values.push_back(policy_value(Policy::dirac(space, d), joint, bell));
  CHECK(values[1] > values[0]);
  CHECK(values[0] > values[2]);
  CHECK(values[2] > values[3]);
}
