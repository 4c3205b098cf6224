#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cfdt/projection.hpp"
#include "test_support.hpp"

using namespace cfdt;

namespace {

// the 2-4-9 / 1-6-8 / 3-5-7 triple: every lottery beats the next with
// probability 5/9 under independent draws
LotterySet dice_lotteries() {
  std::vector<Rat> values;
  for (int v = 1; v <= 9; ++v) values.push_back(Rat(v));
  OutcomeSpace outcomes = OutcomeSpace::numeric(values);
  Rat third = make_rat(1, 3);
  auto lottery = [&](std::initializer_list<int> support) {
    std::vector<Rat> probs(9, Rat(0));
    for (int v : support) probs[v - 1] = third;
    return Lottery{probs};
  };
  return LotterySet(outcomes, {"a", "b", "c"},
                    {lottery({2, 4, 9}), lottery({1, 6, 8}),
                     lottery({3, 5, 7})});
}

MenuAssignment dice_assignment(bool with_trio) {
  LotterySet lots = dice_lotteries();
  ProblemSpace pair_space = menu_space(lots, make_menu({0, 1}));
  UtilityTable win = pairwise_win_indicator(pair_space);
  MenuAssignment assignment(lots);
  assignment.assign_independent(make_menu({0, 1}), win);
  assignment.assign_independent(make_menu({1, 2}), win);
  assignment.assign_independent(make_menu({0, 2}), win);
  if (with_trio) {
    ProblemSpace trio_space = menu_space(lots, make_menu({0, 1, 2}));
    UtilityTable weighted = UtilityTable::from_function(
        trio_space, [&trio_space](int d, std::span<const int> yvec, int) {
          std::vector<int> others;
          for (int k = 0; k < 3; ++k)
            if (k != d) others.push_back(k);
          const auto& vals = trio_space.outcomes.values;
          Rat total(0);
          if (vals[yvec[d]] > vals[yvec[others[0]]])
            total += d == 0 ? Rat(2) : Rat(1);
          if (vals[yvec[d]] > vals[yvec[others[1]]]) total += 1;
          return total;
        });
    assignment.assign_independent(make_menu({0, 1, 2}), weighted);
  }
  return assignment;
}

LotterySet coin_lotteries(bool second_system) {
  OutcomeSpace outcomes = OutcomeSpace::binary();
  Lottery certain{{Rat(0), Rat(1)}};
  Lottery even{{make_rat(1, 2), make_rat(1, 2)}};
  Lottery skew = second_system ? Lottery{{make_rat(1, 4), make_rat(3, 4)}}
                               : Lottery{{make_rat(3, 4), make_rat(1, 4)}};
  return LotterySet(outcomes, {"a", "b", "c"}, {certain, even, skew});
}

UtilityTable context_utility(const ProblemSpace& space) {
  return UtilityTable::from_function(
      space, [&space](int d, std::span<const int> yvec, int) {
        const auto& vals = space.outcomes.values;
        if (d == 0) return Rat(1 - vals[yvec[2]]);
        if (d == 1) return vals[yvec[1]];
        return make_rat(5, 8);
      });
}

State lottery_coupling(const LotterySet& lots) {
  ProblemSpace space(lots.size(), lots.outcomes);
  std::vector<std::vector<Rat>> ms;
  for (const Lottery& lot : lots.lotteries) ms.push_back(lot.probs);
  return independent_coupling(space, ms);
}

}  // namespace

TEST_CASE("menu choice on binary menus") {
  MenuAssignment assignment = dice_assignment(false);
  CHECK(menu_choice(assignment, make_menu({0, 1})) == std::vector<int>{0});
  CHECK(menu_choice(assignment, make_menu({1, 2})) == std::vector<int>{1});
  CHECK(menu_choice(assignment, make_menu({0, 2})) == std::vector<int>{2});

  SUBCASE("singleton menus resolve without an assignment") {
    CHECK(menu_choice(assignment, make_menu({2})) == std::vector<int>{2});
  }
  SUBCASE("missing assignment is an error") {
    CHECK_THROWS_AS(menu_choice(assignment, make_menu({0, 1, 2})),
                    std::invalid_argument);
  }
  SUBCASE("couplings must reproduce the member lotteries") {
    LotterySet lots = dice_lotteries();
    MenuAssignment bad(lots);
    ProblemSpace pair_space = menu_space(lots, make_menu({0, 1}));
    State wrong = independent_coupling(
        pair_space, {lots.lotteries[1].probs, lots.lotteries[0].probs});
    CHECK_THROWS_AS(
        bad.assign(make_menu({0, 1}),
                   MenuEntry{pairwise_win_indicator(pair_space), wrong}),
        std::invalid_argument);
  }
}

TEST_CASE("pairwise revealed relation cycles while each pair is exact") {
  MenuAssignment assignment = dice_assignment(false);
  const auto& entry = assignment.entries.at(make_menu({0, 1}));
  CHECK(policy_value(Policy::dirac(entry.coupling.space, 0), entry.coupling,
                     entry.utility) == make_rat(5, 9));
  CHECK(policy_value(Policy::dirac(entry.coupling.space, 1), entry.coupling,
                     entry.utility) == make_rat(4, 9));

  RelationMatrix relation = revealed_relation(
      [&assignment](const Menu& menu) { return menu_choice(assignment, menu); },
      {"a", "b", "c"});
  CHECK(relation.strictly_above(0, 1));
  CHECK(relation.strictly_above(1, 2));
  CHECK(relation.strictly_above(2, 0));
  TransitivityReport scan = transitivity_scan(3, relation.comparator());
  CHECK_FALSE(scan.holds);
  CHECK(*scan.violation == std::array<int, 3>{0, 1, 2});
}

TEST_CASE("contraction consistency fails for the weighted trio menu") {
  MenuAssignment assignment = dice_assignment(true);
  BinaryChooser chooser = [&assignment](const Menu& menu) {
    return menu_choice(assignment, menu);
  };
  CHECK(menu_choice(assignment, make_menu({0, 2})) == std::vector<int>{2});
  CHECK(menu_choice(assignment, make_menu({0, 1, 2})) == std::vector<int>{0});

  ChoiceRecord record = full_choice_record(3, chooser);
  SenReport report = sen_check(record, 3);
  CHECK_FALSE(report.alpha_holds);
  CHECK(report.beta_holds);
  REQUIRE(report.alpha_violation.has_value());
  CHECK(report.alpha_violation->smaller == make_menu({0, 2}));
  CHECK(report.alpha_violation->larger == make_menu({0, 1, 2}));
  CHECK(report.alpha_violation->element == 0);
}

TEST_CASE("full-set and value-maximizing choosers satisfy both conditions") {
  SUBCASE("chooser that keeps every menu") {
    ChoiceRecord record = full_choice_record(4, [](const Menu& menu) {
      return menu;
    });
    SenReport report = sen_check(record, 4);
    CHECK(report.alpha_holds);
    CHECK(report.beta_holds);
  }
  SUBCASE("random value maximizers (property)") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
      int count = 3 + trial % 3;
      std::vector<Rat> values;
      for (int i = 0; i < count; ++i)
        values.push_back(testing::random_rat(rng, 0, 3, 2));
      ChoiceRecord record = full_choice_record(count, [&](const Menu& menu) {
        Rat best = values[menu[0]];
        for (int i : menu) best = std::max(best, values[i]);
        std::vector<int> chosen;
        for (int i : menu)
          if (values[i] == best) chosen.push_back(i);
        return chosen;
      });
      SenReport report = sen_check(record, count);
      CHECK(report.alpha_holds);
      CHECK(report.beta_holds);
    }
  }
}

TEST_CASE("context choice depends on the unavailable lottery") {
  for (bool second : {false, true}) {
    LotterySet lots = coin_lotteries(second);
    State state = lottery_coupling(lots);
    UtilityTable utility = context_utility(state.space);
    std::vector<int> chosen =
        context_choice(utility, state, make_menu({0, 1}), lots);
    if (second)
      CHECK(chosen == std::vector<int>{1});
    else
      CHECK(chosen == std::vector<int>{0});
  }
}

TEST_CASE("context values for the extended three-option system") {
  LotterySet lots = coin_lotteries(false);
  State state = lottery_coupling(lots);
  UtilityTable utility = context_utility(state.space);
  CHECK(policy_value(Policy::dirac(state.space, 0), state, utility) ==
        make_rat(3, 4));
  CHECK(policy_value(Policy::dirac(state.space, 1), state, utility) ==
        make_rat(1, 2));
  CHECK(policy_value(Policy::dirac(state.space, 2), state, utility) ==
        make_rat(5, 8));

  SUBCASE("revealed relation is acyclic and sorted by value") {
    RelationMatrix relation = revealed_relation(
        [&](const Menu& menu) {
          return context_choice(utility, state, menu, lots);
        },
        {"a", "b", "c"});
    CHECK(relation.strictly_above(0, 2));
    CHECK(relation.strictly_above(2, 1));
    CHECK(relation.strictly_above(0, 1));
    CHECK(transitivity_scan(3, relation.comparator()).holds);
  }

  SUBCASE("marginal mismatch rejected") {
    LotterySet wrong = coin_lotteries(true);
    CHECK_THROWS_AS(context_choice(utility, state, make_menu({0, 1}), wrong),
                    std::invalid_argument);
  }
}

TEST_CASE("context choice records always pass both Sen conditions (property)") {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 150; ++trial) {
    int count = 3 + trial % 2;
    ProblemSpace space(count, OutcomeSpace::binary());
    State state = testing::random_state(rng, space);
    Marginals m = marginals(state);
    std::vector<Lottery> lotteries;
    for (int k = 0; k < count; ++k) lotteries.push_back(Lottery{m.outcome[k]});
    std::vector<std::string> names;
    for (int k = 0; k < count; ++k) names.push_back(std::string(1, char('a' + k)));
    LotterySet lots(space.outcomes, names, lotteries);
    UtilityTable utility = testing::random_utility(rng, space);
    ChoiceRecord record = full_choice_record(count, [&](const Menu& menu) {
      return context_choice(utility, state, menu, lots);
    });
    SenReport report = sen_check(record, count);
    CHECK(report.alpha_holds);
    CHECK(report.beta_holds);
  }
}

TEST_CASE("own-plus-symmetric decomposition") {
  SUBCASE("pure own-outcome table") {
    ProblemSpace space(2, OutcomeSpace::numeric({Rat(0), Rat(1), Rat(2)}));
    UtilityTable table = UtilityTable::from_function(
        space, [&space](int d, std::span<const int> yvec, int) {
          return space.outcomes.values[yvec[d]];
        });
    LanzaniResult result = lanzani_decompose(table);
    REQUIRE(result.feasible);
    CHECK(result.u == std::vector<Rat>{Rat(0), Rat(1), Rat(2)});
    for (const auto& row : result.h)
      for (const Rat& v : row) CHECK(v == 0);
  }

  SUBCASE("regret table with three outcomes is infeasible") {
    ProblemSpace space(2, OutcomeSpace::numeric({Rat(0), Rat(1), Rat(2)}));
    UtilityTable bell = bell_utility(space, 0.003);
    LanzaniResult result = lanzani_decompose(bell);
    CHECK_FALSE(result.feasible);
    CHECK_FALSE(result.certificate.empty());
  }

  SUBCASE("win indicator with many outcomes is infeasible") {
    std::vector<Rat> values;
    for (int v = 1; v <= 9; ++v) values.push_back(Rat(v));
    ProblemSpace space(2, OutcomeSpace::numeric(values));
    LanzaniResult result = lanzani_decompose(pairwise_win_indicator(space));
    CHECK_FALSE(result.feasible);
  }

  SUBCASE("label-asymmetric table rejected") {
    ProblemSpace space(2, OutcomeSpace::binary());
    UtilityTable asymmetric = UtilityTable::from_function(
        space, [](int d, std::span<const int> yvec, int) {
          if (d == 0) return yvec[0] > yvec[1] ? Rat(1) : Rat(0);
          return yvec[0] < yvec[1] ? make_rat(1, 2) : Rat(0);
        });
    CHECK_THROWS_AS(lanzani_decompose(asymmetric), std::invalid_argument);
  }
}

TEST_CASE("decomposable tables induce transitive pairwise choice (property)") {
  std::mt19937 rng(61);
  ProblemSpace space(2, OutcomeSpace::numeric({Rat(0), Rat(1), Rat(2)}));
  const int M = 3;
  for (int trial = 0; trial < 100; ++trial) {
    // build u + symmetric h, then the label-symmetric two-coordinate table
    std::vector<Rat> u(M);
    for (Rat& v : u) v = testing::random_rat(rng);
    std::vector<std::vector<Rat>> h(M, std::vector<Rat>(M));
    for (int s = 0; s < M; ++s)
      for (int t = s; t < M; ++t) h[s][t] = h[t][s] = testing::random_rat(rng);
    UtilityTable table = UtilityTable::from_function(
        space, [&](int d, std::span<const int> yvec, int) {
          int own = yvec[d], other = yvec[1 - d];
          return Rat(u[own] + h[own][other]);
        });
    REQUIRE(lanzani_decompose(table).feasible);

    // three random lotteries, a fresh random coupling per binary menu
    std::vector<Lottery> lotteries;
    for (int i = 0; i < 3; ++i)
      lotteries.push_back(Lottery{testing::random_distribution(rng, M)});
    LotterySet lots(space.outcomes, {"a", "b", "c"}, lotteries);
    MenuAssignment assignment(lots);
    for (const Menu& menu :
         {make_menu({0, 1}), make_menu({1, 2}), make_menu({0, 2})}) {
      // random coupling with the right marginals: mix a random vertex with
      // the independent coupling at a random rational weight
      MarginalsSpec spec{space,
                         {lots.lotteries[menu[0]].probs,
                          lots.lotteries[menu[1]].probs},
                         0};
      std::vector<std::vector<Rat>> vertices = testing::coupling_vertices(spec);
      std::uniform_int_distribution<int> pick(0, static_cast<int>(vertices.size()) - 1);
      std::uniform_int_distribution<int> grid(0, 8);
      Rat weight = make_rat(grid(rng), 8);
      State vertex(space, [&] {
        std::vector<Rat> mass = vertices[pick(rng)];
        return mass;
      }());
      State independent = independent_coupling(space, spec.marginals);
      std::vector<Rat> blended(space.outcome_vector_count());
      for (long yi = 0; yi < space.outcome_vector_count(); ++yi)
        blended[yi] = weight * vertex.at(yi, 0) +
                      (Rat(1) - weight) * independent.at(yi, 0);
      assignment.assign(menu, MenuEntry{table, State(space, blended)});
    }
    RelationMatrix relation = revealed_relation(
        [&](const Menu& menu) { return menu_choice(assignment, menu); },
        {"a", "b", "c"});
    CHECK(transitivity_scan(3, relation.comparator()).holds);
  }
}
