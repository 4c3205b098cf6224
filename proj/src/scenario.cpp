#include "cfdt/scenario.hpp"

#include <algorithm>
#include <stdexcept>

namespace cfdt {

namespace {

// ---------------------------------------------------------------------------
// shared builders

UtilityTable gm_utility(const ProblemSpace& space) {
  return UtilityTable::from_function(
      space, [&space](int d, std::span<const int> yvec, int) {
        const Rat& y0 = space.outcomes.values[yvec[0]];
        const Rat& y1 = space.outcomes.values[yvec[1]];
        if (d == 0) return y0 > y1 ? Rat(1) : Rat(0);
        return y0 < y1 ? make_rat(1, 2) : Rat(0);
      });
}

std::vector<Rat> sparse_lottery(int support, std::vector<std::pair<int, Rat>> cells) {
  std::vector<Rat> probs(support, Rat(0));
  for (auto& [index, mass] : cells) probs[index] = mass;
  return probs;
}

Json cell_json(const ProblemSpace& space, const Cell& cell) {
  Json j;
  j["d"] = cell.d;
  Json labels = Json::array();
  for (int v : space.yvec_at(cell.yindex))
    labels.push_back(space.outcomes.labels[v]);
  j["y"] = labels;
  j["x"] = space.covariates[cell.x];
  return j;
}

// ---------------------------------------------------------------------------
// builtins

Scenario make_russian_roulette() {
  ProblemSpace space(2, OutcomeSpace::binary());
  Scenario sc{"russian-roulette", space, {}, {}, {}, Json::object()};
  sc.states.emplace("independent",
                    independent_coupling(space, {{make_rat(1, 6), make_rat(5, 6)},
                                                 {make_rat(1, 7), make_rat(6, 7)}}));
  sc.utilities.emplace("gm", gm_utility(space));
  sc.policies.emplace("dirac0", Policy::dirac(space, 0));
  sc.policies.emplace("dirac1", Policy::dirac(space, 1));
  sc.expected = {
      {"values.gm.independent.dirac0", "5/42"},
      {"values.gm.independent.dirac1", "1/14"},
      {"diff.gm.independent.dirac1-dirac0", "-1/21"},
      {"bounds.gm.independent.d0.lower", "0"},
      {"bounds.gm.independent.d0.upper", "1/7"},
      {"bounds.gm.independent.d1.lower", "1/84"},
      {"bounds.gm.independent.d1.upper", "1/12"},
      {"bounds.gm.independent.dominant", Json::array()},
      {"decompose.gm.additive", false},
      {"decompose.gm.standard", false},
      {"decompose.gm.outcome", false},
      {"decompose.gm.residual", "1"},
      {"decompose.gm.split_exact", false},
  };
  return sc;
}

OutcomeSpace allais_outcomes() {
  return OutcomeSpace::numeric({Rat(0), Rat(3000), Rat(4000)});
}

std::vector<Rat> allais_lottery(const char* which) {
  std::string name = which;
  if (name == "a1") return {make_rat(1, 5), Rat(0), make_rat(4, 5)};
  if (name == "b1") return {Rat(0), Rat(1), Rat(0)};
  if (name == "a2") return {make_rat(4, 5), Rat(0), make_rat(1, 5)};
  return {make_rat(3, 4), make_rat(1, 4), Rat(0)};  // b2
}

Scenario make_allais_binary() {
  ProblemSpace space(2, allais_outcomes());
  Scenario sc{"allais-binary", space, {}, {}, {}, Json::object()};
  sc.states.emplace("P1", independent_coupling(
                              space, {allais_lottery("a1"), allais_lottery("b1")}));
  sc.states.emplace("P2", independent_coupling(
                              space, {allais_lottery("a2"), allais_lottery("b2")}));
  sc.utilities.emplace("bell", bell_utility(space, 0.003));
  sc.policies.emplace("dirac0", Policy::dirac(space, 0));
  sc.policies.emplace("dirac1", Policy::dirac(space, 1));
  auto approx = [](const char* target) {
    return Json{{"approx", target}, {"tol", "1/10"}};
  };
  sc.expected = {
      {"ranking.bell",
       Json::array({"P1.dirac1", "P1.dirac0", "P2.dirac0", "P2.dirac1"})},
      {"values.bell.P1.dirac1", approx("29849/10")},
      {"values.bell.P1.dirac0", approx("15803/10")},
      {"values.bell.P2.dirac0", approx("-4101/5")},
      {"values.bell.P2.dirac1", approx("-118319/5")},
  };
  return sc;
}

Scenario make_allais_four() {
  ProblemSpace space(4, allais_outcomes());
  Scenario sc{"allais-four", space, {}, {}, {}, Json::object()};
  sc.states.emplace(
      "P", independent_coupling(space, {allais_lottery("a1"), allais_lottery("b1"),
                                        allais_lottery("a2"), allais_lottery("b2")}));
  sc.utilities.emplace("bell", bell_utility(space, 0.002));
  for (int d = 0; d < 4; ++d)
    sc.policies.emplace("dirac" + std::to_string(d), Policy::dirac(space, d));
  sc.expected = {
      {"ranking.bell",
       Json::array({"P.dirac1", "P.dirac0", "P.dirac2", "P.dirac3"})},
  };
  return sc;
}

// Three-lottery structure shared by the cycle and treatment-choice examples:
// binary-menu states named ab, bc, ac with coordinates in name order.
struct ThreeLotteries {
  std::vector<Rat> a, b, c;
};

void add_pair_states(Scenario& sc, const ProblemSpace& pair_space,
                     const ThreeLotteries& lots) {
  sc.states.emplace("ab", independent_coupling(pair_space, {lots.a, lots.b}));
  sc.states.emplace("bc", independent_coupling(pair_space, {lots.b, lots.c}));
  sc.states.emplace("ac", independent_coupling(pair_space, {lots.a, lots.c}));
}

Scenario make_rps_cycle() {
  std::vector<Rat> values;
  for (int v = 1; v <= 9; ++v) values.push_back(Rat(v));
  ProblemSpace pair_space(2, OutcomeSpace::numeric(values));
  ProblemSpace trio_space(3, OutcomeSpace::numeric(values));
  Rat third = make_rat(1, 3);
  ThreeLotteries lots{sparse_lottery(9, {{1, third}, {3, third}, {8, third}}),
                      sparse_lottery(9, {{0, third}, {5, third}, {7, third}}),
                      sparse_lottery(9, {{2, third}, {4, third}, {6, third}})};

  Scenario sc{"rps-cycle", pair_space, {}, {}, {}, Json::object()};
  add_pair_states(sc, pair_space, lots);
  sc.states.emplace("abc",
                    independent_coupling(trio_space, {lots.a, lots.b, lots.c}));
  sc.utilities.emplace("win", pairwise_win_indicator(pair_space));
  // weighted three-option table behind the contraction-consistency violation:
  // the first option doubles its win against the next coordinate
  sc.utilities.emplace(
      "menu3", UtilityTable::from_function(
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
                   }));
  sc.expected = {
      {"values.win.ab.dirac0", "5/9"},
      {"values.win.ab.dirac1", "4/9"},
      {"values.win.bc.dirac0", "5/9"},
      {"values.win.bc.dirac1", "4/9"},
      {"values.win.ac.dirac0", "4/9"},
      {"values.win.ac.dirac1", "5/9"},
      {"ranking.win", Json::array({"ab.dirac0=ac.dirac1=bc.dirac0",
                                   "ab.dirac1=ac.dirac0=bc.dirac1"})},
      {"project.pair.ab.a", "5/9"},
      {"project.pair.ab.b", "4/9"},
      {"project.pair.bc.b", "5/9"},
      {"project.pair.bc.c", "4/9"},
      {"project.pair.ac.c", "5/9"},
      {"project.pair.ac.a", "4/9"},
      {"project.relation.a.b", ">"},
      {"project.relation.b.c", ">"},
      {"project.relation.a.c", "<"},
      {"project.cycle.found", true},
      {"project.cycle.triple", Json::array({"a", "b", "c"})},
      {"project.sen.choice.ac", Json::array({"c"})},
      {"project.sen.choice.abc", Json::array({"a"})},
      {"project.sen.alpha_holds", false},
      {"project.sen.alpha_violation.small", Json::array({"a", "c"})},
      {"project.sen.alpha_violation.big", Json::array({"a", "b", "c"})},
      {"project.sen.alpha_violation.element", "a"},
      {"project.sen.beta_holds", true},
  };
  return sc;
}

Scenario make_sawant() {
  std::vector<Rat> values;
  for (int v = 1; v <= 6; ++v) values.push_back(Rat(v));
  ProblemSpace pair_space(2, OutcomeSpace::numeric(values));
  ThreeLotteries lots{
      sparse_lottery(6, {{0, make_rat(1, 6)}, {3, make_rat(5, 6)}}),
      sparse_lottery(6, {{1, make_rat(1, 2)}, {4, make_rat(1, 2)}}),
      sparse_lottery(6, {{2, make_rat(5, 6)}, {5, make_rat(1, 6)}})};

  Scenario sc{"sawant", pair_space, {}, {}, {}, Json::object()};
  add_pair_states(sc, pair_space, lots);
  sc.utilities.emplace("win", pairwise_win_indicator(pair_space));
  sc.utilities.emplace("net", net_win_indicator(pair_space));
  sc.expected = {
      {"bounds.net.ab.d1.lower", "0"},
      {"bounds.net.ab.d1.upper", "1/3"},
      {"bounds.net.ab.dominant", Json::array()},
      {"bounds.net.ac.d0.lower", "1/3"},
      {"bounds.net.ac.d0.upper", "2/3"},
      {"bounds.net.ac.dominant", Json::array({"d0"})},
      {"bounds.net.bc.d1.lower", "0"},
      {"bounds.net.bc.d1.upper", "1/3"},
      {"project.pair.ab.a", "5/12"},
      {"project.pair.ab.b", "7/12"},
      {"project.pair.ac.a", "25/36"},
      {"project.pair.ac.c", "11/36"},
      {"project.pair.bc.b", "5/12"},
      {"project.pair.bc.c", "7/12"},
      {"project.relation.a.b", "<"},
      {"project.relation.a.c", ">"},
      {"project.relation.b.c", "<"},
      {"project.cycle.found", true},
      {"project.cycle.triple", Json::array({"a", "c", "b"})},
  };
  return sc;
}

Scenario make_context_menu() {
  ProblemSpace space(3, OutcomeSpace::binary());
  Scenario sc{"context-menu", space, {}, {}, {}, Json::object()};
  std::vector<Rat> lot_a = {Rat(0), Rat(1)};
  std::vector<Rat> lot_b = {make_rat(1, 2), make_rat(1, 2)};
  std::vector<Rat> lot_c1 = {make_rat(3, 4), make_rat(1, 4)};
  std::vector<Rat> lot_c2 = {make_rat(1, 4), make_rat(3, 4)};
  sc.states.emplace("D1", independent_coupling(space, {lot_a, lot_b, lot_c1}));
  sc.states.emplace("D2", independent_coupling(space, {lot_a, lot_b, lot_c2}));
  sc.utilities.emplace(
      "context", UtilityTable::from_function(
                     space, [&space](int d, std::span<const int> yvec, int) {
                       const auto& vals = space.outcomes.values;
                       if (d == 0) return Rat(1 - vals[yvec[2]]);
                       if (d == 1) return vals[yvec[1]];
                       return make_rat(5, 8);
                     }));
  sc.utilities.emplace(
      "dominant", UtilityTable::from_function(
                      space, [&space](int d, std::span<const int> yvec, int) {
                        const auto& vals = space.outcomes.values;
                        if (d == 0) return Rat(2 + vals[yvec[2]]);
                        if (d == 1) return vals[yvec[1]];
                        return Rat(0);
                      }));
  sc.expected = {
      {"project.value.context.D1.a", "3/4"},
      {"project.value.context.D1.b", "1/2"},
      {"project.value.context.D1.c", "5/8"},
      {"project.value.context.D2.a", "1/4"},
      {"project.value.context.D2.b", "1/2"},
      {"project.choice.context.D1.ab", Json::array({"a"})},
      {"project.choice.context.D2.ab", Json::array({"b"})},
      {"project.ranking.context.D1", Json::array({"a", "c", "b"})},
      {"project.dominant.lower", "7/4"},
      {"project.dominant.upper", "7/4"},
      {"project.dominant.always", true},
      {"project.independence.realized.mixture_equals_b", true},
      {"project.independence.realized.violated", true},
      {"project.independence.potential.mixture_equals_b", false},
      {"project.independence.potential.holds", true},
  };
  return sc;
}

Scenario make_gm_extension() {
  ProblemSpace space(2, OutcomeSpace::binary());
  Scenario sc{"gm-extension", space, {}, {}, {}, Json::object()};
  sc.states.emplace("rr",
                    independent_coupling(space, {{make_rat(1, 6), make_rat(5, 6)},
                                                 {make_rat(1, 7), make_rat(6, 7)}}));
  sc.utilities.emplace("gm", gm_utility(space));
  sc.expected = {
      {"extend.gm.means.rr", Json::array({"5/6", "6/7"})},
      {"extend.gm.asymmetric.contrast.coefficients",
       Json::array({"-1", "1/2", "0"})},
      {"extend.gm.asymmetric.value.rr", "1/2"},
      {"extend.gm.asymmetric.recommends.rr", "d1"},
      {"extend.gm.product.contrast.coefficients",
       Json::array({"0", "-1", "1/2", "1/2"})},
      {"extend.gm.product.value.rr", "-1/21"},
      {"extend.gm.product.recommends.rr", "d0"},
      {"extend.gm.ambiguity.rr.opposite", true},
      {"extend.gm.product.assumptions.monotone", true},
      {"extend.gm.product.assumptions.unique_crossing", true},
      {"extend.gm.asymmetric.assumptions.monotone", true},
      {"extend.gm.asymmetric.assumptions.unique_crossing", true},
      {"extend.gm.product.phi.0", "0"},
      {"extend.gm.product.phi.1/2", "2/3"},
      {"extend.gm.product.phi.1", "1"},
      {"extend.gm.product.equivalence.mismatches", 0},
      {"extend.gm.product.phi_monotone", true},
      {"extend.gm.asymmetric.equivalence.mismatches", 0},
      {"extend.gm.asymmetric.phi.1/2", "1/2"},
  };
  return sc;
}

Scenario make_independence_violation() {
  ProblemSpace space(2, OutcomeSpace::binary());
  Scenario sc{"independence-violation", space, {}, {}, {}, Json::object()};
  const int benefit[] = {0, 1};
  const int harm[] = {1, 0};
  sc.states.emplace("P", dirac_state(space, benefit));
  sc.states.emplace("Q", dirac_state(space, harm));
  sc.utilities.emplace("gm", gm_utility(space));
  sc.expected = {
      {"axioms.independence.extended.holds", false},
      {"axioms.independence.extended.value_p", "1/2"},
      {"axioms.independence.extended.value_q", "0"},
      {"axioms.independence.extended.value_mix_p", "0"},
      {"axioms.independence.extended.value_mix_q", "0"},
      {"axioms.independence.extended.mix_means", Json::array({"3/5", "2/5"})},
      {"axioms.independence.expected_utility.holds", true},
  };
  return sc;
}

// ---------------------------------------------------------------------------
// command reports

std::vector<std::string> ranking_groups(
    std::vector<std::pair<Rat, std::string>> entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<std::string> groups;
  for (std::size_t i = 0; i < entries.size();) {
    std::string group = entries[i].second;
    std::size_t j = i + 1;
    while (j < entries.size() && entries[j].first == entries[i].first) {
      group += "=" + entries[j].second;
      ++j;
    }
    groups.push_back(std::move(group));
    i = j;
  }
  return groups;
}

std::vector<std::pair<std::string, Policy>> policies_for(
    const Scenario& sc, const ProblemSpace& space) {
  std::vector<std::pair<std::string, Policy>> matching;
  for (const auto& [name, policy] : sc.policies)
    if (policy.space == space) matching.emplace_back(name, policy);
  if (matching.empty())
    for (int d = 0; d < space.num_decisions(); ++d)
      matching.emplace_back("dirac" + std::to_string(d),
                            Policy::dirac(space, d));
  return matching;
}

Json evaluate_report(const Scenario& sc) {
  Json report = Json::object();
  for (const auto& [uname, utility] : sc.utilities) {
    std::vector<std::pair<Rat, std::string>> entries;
    for (const auto& [sname, state] : sc.states) {
      if (!(state.space == utility.space)) continue;
      std::map<std::string, Rat> values;
      for (const auto& [pname, policy] : policies_for(sc, utility.space)) {
        Rat v = policy_value(policy, state, utility);
        report["values"][uname][sname][pname] = rat_to_string(v);
        entries.emplace_back(v, sname + "." + pname);
        values.emplace(pname, std::move(v));
      }
      for (const auto& [pa, va] : values)
        for (const auto& [pb, vb] : values)
          if (pa != pb)
            report["diff"][uname][sname][pa + "-" + pb] =
                rat_to_string(Rat(va - vb));
    }
    if (entries.size() >= 2)
      report["ranking"][uname] = ranking_groups(std::move(entries));
  }
  if (!report.contains("values"))
    throw std::invalid_argument("evaluate: no utility/state pair shares a space");
  return report;
}

Json bounds_report(const Scenario& sc) {
  Json report = Json::object();
  for (const auto& [uname, utility] : sc.utilities)
    for (const auto& [sname, state] : sc.states) {
      if (!(state.space == utility.space)) continue;
      MarginalsSpec spec = MarginalsSpec::from_state(state);
      RankingBounds ranking = bound_policy_ranking(spec, utility);
      Json block;
      for (int d = 0; d < utility.space.num_decisions(); ++d)
        block["d" + std::to_string(d)] = bound_to_json(ranking.per_decision[d]);
      Json dominant = Json::array();
      for (int d : ranking.dominant) dominant.push_back("d" + std::to_string(d));
      block["dominant"] = dominant;
      block["recommendation"] = ranking.has_recommendation();
      report["bounds"][uname][sname] = block;
    }
  if (!report.contains("bounds"))
    throw std::invalid_argument("bounds: no utility/state pair shares a space");
  return report;
}

Json decompose_report(const Scenario& sc) {
  Json report = Json::object();
  for (const auto& [uname, utility] : sc.utilities) {
    Json block;
    AdditiveDecomposition decomposition = additive_decompose(utility);
    block["additive"] = decomposition.additive();
    block["residual"] = rat_to_string(decomposition.residual);
    if (decomposition.worst_cell)
      block["worst_cell"] = cell_json(utility.space, *decomposition.worst_cell);
    if (decomposition.additive()) {
      Json components = Json::array();
      const ProblemSpace& space = utility.space;
      for (int k = 0; k < space.num_decisions(); ++k)
        for (int d = 0; d < space.num_decisions(); ++d)
          for (int y = 0; y < space.num_outcomes(); ++y)
            for (int x = 0; x < space.num_covariates(); ++x) {
              const Rat& v = decomposition.component(k, d, y, x);
              if (sgn(v) == 0) continue;
              components.push_back({{"component", k},
                                    {"d", d},
                                    {"y_k", space.outcomes.labels[y]},
                                    {"x", space.covariates[x]},
                                    {"value", rat_to_string(v)}});
            }
      block["components"] = components;
    }
    auto standard = reduce_to_standard(utility);
    block["standard"] = std::holds_alternative<StandardUtility>(standard);
    if (const auto* witness = std::get_if<CellPairWitness>(&standard)) {
      block["standard_failure"] = {
          {"first", cell_json(utility.space, witness->first)},
          {"second", cell_json(utility.space, witness->second)},
          {"first_value", rat_to_string(witness->first_value)},
          {"second_value", rat_to_string(witness->second_value)}};
    }
    auto outcome = reduce_to_outcome(utility);
    block["outcome"] = std::holds_alternative<OutcomeUtility>(outcome);
    if (utility.space.num_decisions() == 2) {
      BinarySplit split = binary_split(utility);
      block["split_exact"] = split.exact;
      if (split.exact) {
        Json h = Json::array();
        for (long yi = 0; yi < utility.space.outcome_vector_count(); ++yi)
          for (int x = 0; x < utility.space.num_covariates(); ++x) {
            const Rat& v = split.shared(yi, x);
            if (sgn(v) == 0) continue;
            Json entry = cell_json(utility.space, Cell{0, yi, x});
            entry.erase("d");
            entry["value"] = rat_to_string(v);
            h.push_back(entry);
          }
        block["shared_part"] = h;
      }
    }
    report["decompose"][uname] = block;
  }
  if (!report.contains("decompose"))
    throw std::invalid_argument("decompose: scenario has no utilities");
  return report;
}

const char* class_name(UtilityClass c) {
  switch (c) {
    case UtilityClass::Outcome: return "outcome";
    case UtilityClass::Standard: return "standard";
    case UtilityClass::Additive: return "additive";
  }
  return "?";
}

Json axioms_report(const Scenario& sc) {
  Json report = Json::object();
  for (const auto& [uname, utility] : sc.utilities) {
    Json classes = Json::array();
    for (UtilityClass c : classify_utility(utility)) classes.push_back(class_name(c));
    report["axioms"]["classes"][uname] = classes;
    for (const auto& [sname, state] : sc.states) {
      if (!(state.space == utility.space)) continue;
      if (utility.space.num_decisions() < 3) continue;
      std::vector<Law> laws;
      for (int d = 0; d < utility.space.num_decisions(); ++d)
        laws.push_back(induced_law(Policy::dirac(utility.space, d), state));
      TransitivityReport scan =
          transitivity_scan(laws, expected_utility_functional(utility));
      report["axioms"]["transitivity"][uname][sname] = scan.holds;
    }
  }

  if (sc.name == "independence-violation") {
    const UtilityTable& gm = sc.utilities.at("gm");
    Law p = induced_law(Policy::dirac(gm.space, 1), sc.states.at("P"));
    Law q = induced_law(Policy::dirac(gm.space, 1), sc.states.at("Q"));
    Rat alpha = make_rat(2, 5);

    ExtendedUtility asym = asymmetric_extension(gm);
    IndependenceReport extended =
        check_independence(p, q, q, alpha, asym.value_functional());
    Json block;
    block["holds"] = extended.holds;
    block["value_p"] = rat_to_string(extended.value_p);
    block["value_q"] = rat_to_string(extended.value_q);
    block["value_mix_p"] = rat_to_string(extended.value_mix_p);
    block["value_mix_q"] = rat_to_string(extended.value_mix_q);
    std::vector<Rat> mix_means = mean_vector(mix2(p, q, alpha));
    block["mix_means"] =
        Json::array({rat_to_string(mix_means[0]), rat_to_string(mix_means[1])});
    block["report"] = independence_to_json(extended);
    report["axioms"]["independence"]["extended"] = block;

    IndependenceReport plain =
        check_independence(p, q, q, alpha, expected_utility_functional(gm));
    report["axioms"]["independence"]["expected_utility"]["holds"] = plain.holds;
  }
  if (!report.contains("axioms"))
    throw std::invalid_argument("axioms: scenario has no utilities");
  return report;
}

// Shared by the cycle and treatment examples: lotteries a, b, c with
// independent binary-menu couplings named ab, bc, ac.
Json three_lottery_project(const Scenario& sc, bool with_trio_menu) {
  const std::vector<std::string> names = {"a", "b", "c"};
  const UtilityTable& win = sc.utilities.at("win");
  const State& ab = sc.states.at("ab");
  const State& bc = sc.states.at("bc");
  const State& ac = sc.states.at("ac");

  Marginals mab = marginals(ab);
  Marginals mbc = marginals(bc);
  LotterySet lots(win.space.outcomes, names,
                  {Lottery{mab.outcome[0]}, Lottery{mab.outcome[1]},
                   Lottery{mbc.outcome[1]}});

  MenuAssignment assignment(lots);
  assignment.assign(make_menu({0, 1}), MenuEntry{win, ab});
  assignment.assign(make_menu({1, 2}), MenuEntry{win, bc});
  assignment.assign(make_menu({0, 2}), MenuEntry{win, ac});
  if (with_trio_menu)
    assignment.assign(make_menu({0, 1, 2}),
                      MenuEntry{sc.utilities.at("menu3"), sc.states.at("abc")});

  Json report = Json::object();
  auto pair_block = [&](const std::string& sname, const State& state, int left,
                        int right) {
    report["project"]["pair"][sname][names[left]] = rat_to_string(
        policy_value(Policy::dirac(state.space, 0), state, win));
    report["project"]["pair"][sname][names[right]] = rat_to_string(
        policy_value(Policy::dirac(state.space, 1), state, win));
  };
  pair_block("ab", ab, 0, 1);
  pair_block("bc", bc, 1, 2);
  pair_block("ac", ac, 0, 2);

  BinaryChooser chooser = [&assignment](const Menu& menu) {
    return menu_choice(assignment, menu);
  };
  RelationMatrix relation = revealed_relation(chooser, names);
  report["project"]["relation"] = relation_to_json(relation);

  TransitivityReport scan = transitivity_scan(3, relation.comparator());
  report["project"]["cycle"]["found"] = !scan.holds;
  if (scan.violation) {
    Json triple = Json::array();
    for (int i : *scan.violation) triple.push_back(names[i]);
    report["project"]["cycle"]["triple"] = triple;
  }

  if (with_trio_menu) {
    ChoiceRecord record = full_choice_record(3, chooser);
    for (const auto& [menu, chosen] : record) {
      std::string key;
      for (int i : menu) key += names[i];
      Json chosen_names = Json::array();
      for (int i : chosen) chosen_names.push_back(names[i]);
      report["project"]["sen"]["choice"][key] = chosen_names;
    }
    SenReport sen = sen_check(record, 3);
    Json sen_json = sen_to_json(sen, names);
    for (auto& [key, value] : sen_json.items())
      report["project"]["sen"][key] = value;
  }
  return report;
}

Json context_menu_project(const Scenario& sc, const Rat& /*grid_step*/) {
  const std::vector<std::string> names = {"a", "b", "c"};
  const UtilityTable& context = sc.utilities.at("context");
  const UtilityTable& dominant = sc.utilities.at("dominant");

  Json report = Json::object();
  std::map<std::string, std::vector<Rat>> system_values;
  for (const char* system : {"D1", "D2"}) {
    const State& state = sc.states.at(system);
    Marginals m = marginals(state);
    LotterySet lots(state.space.outcomes, names,
                    {Lottery{m.outcome[0]}, Lottery{m.outcome[1]},
                     Lottery{m.outcome[2]}});
    std::vector<Rat> values;
    for (int d = 0; d < 3; ++d) {
      Rat v = policy_value(Policy::dirac(state.space, d), state, context);
      report["project"]["value"]["context"][system][names[d]] =
          rat_to_string(v);
      values.push_back(std::move(v));
    }
    std::vector<int> chosen =
        context_choice(context, state, make_menu({0, 1}), lots);
    Json chosen_names = Json::array();
    for (int i : chosen) chosen_names.push_back(names[i]);
    report["project"]["choice"]["context"][system]["ab"] = chosen_names;

    std::vector<std::pair<Rat, std::string>> entries;
    for (int d = 0; d < 3; ++d) entries.emplace_back(values[d], names[d]);
    report["project"]["ranking"]["context"][system] =
        ranking_groups(std::move(entries));
    system_values.emplace(system, std::move(values));
  }

  // worst-case gap between the first two options over the whole coupling
  // polytope of the D1 marginals
  UtilityTable gap = UtilityTable::from_function(
      dominant.space, [&dominant](int d, std::span<const int> yvec, int x) {
        if (d != 0) return Rat(0);
        long yi = dominant.space.yvec_index(yvec);
        return Rat(dominant.at(0, yi, x) - dominant.at(1, yi, x));
      });
  BoundResult gap_bounds =
      sharp_bounds(MarginalsSpec::from_state(sc.states.at("D1")), 0, gap);
  report["project"]["dominant"]["lower"] = rat_to_string(gap_bounds.lower);
  report["project"]["dominant"]["upper"] = rat_to_string(gap_bounds.upper);
  report["project"]["dominant"]["always"] = sgn(gap_bounds.lower) > 0;

  // realized-outcome mixing: b is exactly the 1/3 a + 2/3 c blend, which
  // together with a above c and c above b contradicts mixing-consistency on
  // the realized space
  const State& d1 = sc.states.at("D1");
  Marginals m1 = marginals(d1);
  Rat third = make_rat(1, 3);
  bool mixture_equals_b = true;
  for (int v = 0; v < 2; ++v) {
    Rat blended = third * m1.outcome[0][v] + (1 - third) * m1.outcome[2][v];
    if (blended != m1.outcome[1][v]) mixture_equals_b = false;
  }
  const std::vector<Rat>& values = system_values.at("D1");
  bool violated = mixture_equals_b && values[0] > values[2] && values[1] < values[2];
  report["project"]["independence"]["realized"]["mixture_equals_b"] =
      mixture_equals_b;
  report["project"]["independence"]["realized"]["violated"] = violated;

  Law qa = induced_law(Policy::dirac(d1.space, 0), d1);
  Law qb = induced_law(Policy::dirac(d1.space, 1), d1);
  Law qc = induced_law(Policy::dirac(d1.space, 2), d1);
  report["project"]["independence"]["potential"]["mixture_equals_b"] =
      mix2(qa, qc, third) == qb;
  IndependenceReport check = check_independence(
      qa, qc, qc, third, expected_utility_functional(context));
  report["project"]["independence"]["potential"]["holds"] = check.holds;
  return report;
}

Json project_report(const Scenario& sc, const Rat& grid_step) {
  if (sc.name == "rps-cycle") return three_lottery_project(sc, true);
  if (sc.name == "sawant") return three_lottery_project(sc, false);
  if (sc.name == "context-menu") return context_menu_project(sc, grid_step);
  throw std::invalid_argument("project: command not applicable to scenario '" +
                              sc.name + "'");
}

const char* recommend_name(int rec) {
  return rec > 0 ? "d1" : rec < 0 ? "d0" : "tie";
}

Json extend_family_report(const ContrastForm& contrast,
                          const std::map<std::string, std::vector<Rat>>& means,
                          const Rat& grid_step) {
  Json block;
  block["contrast"] = contrast_to_json(contrast, grid_step);
  for (const auto& [sname, mean] : means) {
    Rat value = contrast.eval(mean[0], mean[1]);
    block["value"][sname] = rat_to_string(value);
    block["recommends"][sname] = recommend_name(sgn(value));
  }
  CrossingReport assumptions = check_crossing_assumptions(contrast, grid_step);
  block["assumptions"] = crossing_to_json(assumptions);
  if (assumptions.passed()) {
    PhiPair phi = build_phi(contrast);
    bool monotone = true;
    Rat previous;
    bool first = true;
    for (Rat p0 = contrast.interval.lo; p0 <= contrast.interval.hi;
         p0 += grid_step) {
      Rat value = phi.phi0(p0);
      block["phi"][rat_to_string(p0)] = rat_to_string(value);
      if (!first && value < previous) monotone = false;
      previous = value;
      first = false;
    }
    block["phi_monotone"] = monotone;
    block["phi_serialized"] = phi_to_json(phi, grid_step);
    block["equivalence"] =
        equivalence_to_json(check_equivalence(contrast, phi, grid_step));
  }
  return block;
}

Json extend_report(const Scenario& sc, const Rat& grid_step) {
  Json report = Json::object();
  for (const auto& [uname, utility] : sc.utilities) {
    const ProblemSpace& space = utility.space;
    if (space.num_decisions() != 2 || space.num_outcomes() != 2 ||
        space.outcomes.values[0] != 0 || space.outcomes.values[1] != 1 ||
        space.num_covariates() != 1)
      continue;
    std::map<std::string, std::vector<Rat>> means;
    for (const auto& [sname, state] : sc.states) {
      if (!(state.space == space)) continue;
      std::vector<Rat> mean = mean_vector(state);
      report["extend"][uname]["means"][sname] =
          Json::array({rat_to_string(mean[0]), rat_to_string(mean[1])});
      means.emplace(sname, std::move(mean));
    }
    try {
      ContrastForm asym = asymmetric_extension(utility).contrast();
      report["extend"][uname]["asymmetric"] =
          extend_family_report(asym, means, grid_step);
    } catch (const std::invalid_argument& error) {
      report["extend"][uname]["asymmetric"]["error"] = error.what();
    }
    ContrastForm prod = product_extension(utility).contrast();
    report["extend"][uname]["product"] =
        extend_family_report(prod, means, grid_step);
    for (const auto& [sname, mean] : means) {
      AmbiguityDemo demo = extension_ambiguity_demo(utility, mean[0], mean[1]);
      Json block;
      block["asymmetric"] = recommend_name(demo.asymmetric_recommendation);
      block["product"] = recommend_name(demo.product_recommendation);
      block["opposite"] = demo.opposite;
      report["extend"][uname]["ambiguity"][sname] = block;
    }
  }
  if (!report.contains("extend"))
    throw std::invalid_argument(
        "extend: scenario has no binary-outcome two-decision utility");
  return report;
}

// ---------------------------------------------------------------------------
// golden comparison

bool values_match(const Json& expected, const Json& actual);

bool rational_equal(const Json& expected, const Json& actual) {
  if (!expected.is_string() || !actual.is_string()) return false;
  try {
    return parse_rational(expected.get<std::string>()) ==
           parse_rational(actual.get<std::string>());
  } catch (const std::invalid_argument&) {
    return false;
  }
}

bool values_match(const Json& expected, const Json& actual) {
  if (expected.is_object() && expected.contains("approx")) {
    if (!actual.is_string()) return false;
    try {
      Rat target = parse_rational(expected.at("approx").get<std::string>());
      Rat tolerance = parse_rational(expected.at("tol").get<std::string>());
      Rat value = parse_rational(actual.get<std::string>());
      return abs(Rat(value - target)) <= tolerance;
    } catch (const std::invalid_argument&) {
      return false;
    }
  }
  if (expected.is_array()) {
    if (!actual.is_array() || expected.size() != actual.size()) return false;
    for (std::size_t i = 0; i < expected.size(); ++i)
      if (!values_match(expected[i], actual[i])) return false;
    return true;
  }
  if (expected.is_string() && actual.is_string())
    return expected == actual || rational_equal(expected, actual);
  return expected == actual;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {
      "russian-roulette",      "allais-binary", "allais-four",
      "rps-cycle",             "context-menu",  "sawant",
      "gm-extension",          "independence-violation"};
  return names;
}

Scenario builtin(const std::string& name) {
  if (name == "russian-roulette") return make_russian_roulette();
  if (name == "allais-binary") return make_allais_binary();
  if (name == "allais-four") return make_allais_four();
  if (name == "rps-cycle") return make_rps_cycle();
  if (name == "context-menu") return make_context_menu();
  if (name == "sawant") return make_sawant();
  if (name == "gm-extension") return make_gm_extension();
  if (name == "independence-violation") return make_independence_violation();
  throw std::invalid_argument("unknown builtin scenario: " + name);
}

Command parse_command(const std::string& name) {
  if (name == "evaluate") return Command::Evaluate;
  if (name == "bounds") return Command::Bounds;
  if (name == "decompose") return Command::Decompose;
  if (name == "axioms") return Command::Axioms;
  if (name == "project") return Command::Project;
  if (name == "extend") return Command::Extend;
  throw std::invalid_argument("unknown command: " + name);
}

std::string command_name(Command command) {
  switch (command) {
    case Command::Evaluate: return "evaluate";
    case Command::Bounds: return "bounds";
    case Command::Decompose: return "decompose";
    case Command::Axioms: return "axioms";
    case Command::Project: return "project";
    case Command::Extend: return "extend";
  }
  return "?";
}

std::map<std::string, Json> flatten_report(const Json& report) {
  std::map<std::string, Json> flat;
  std::function<void(const Json&, const std::string&)> walk =
      [&](const Json& node, const std::string& prefix) {
        if (node.is_object()) {
          for (const auto& [key, value] : node.items())
            walk(value, prefix.empty() ? key : prefix + "." + key);
        } else {
          flat[prefix] = node;
        }
      };
  walk(report, "");
  return flat;
}

RunResult run(const Scenario& scenario_in, Command command,
              const RunOptions& options) {
  Scenario scenario = scenario_in;
  if (options.lambda > 0) {
    auto bell = scenario.utilities.find("bell");
    if (bell != scenario.utilities.end())
      bell->second = bell_utility(bell->second.space, options.lambda);
  }

  Json report;
  switch (command) {
    case Command::Evaluate: report = evaluate_report(scenario); break;
    case Command::Bounds: report = bounds_report(scenario); break;
    case Command::Decompose: report = decompose_report(scenario); break;
    case Command::Axioms: report = axioms_report(scenario); break;
    case Command::Project: report = project_report(scenario, options.grid_step); break;
    case Command::Extend: report = extend_report(scenario, options.grid_step); break;
  }

  RunResult result;
  result.report = std::move(report);
  if (scenario.expected.is_object() && !scenario.expected.empty()) {
    std::map<std::string, Json> flat = flatten_report(result.report);
    Json checks = Json::array();
    for (const auto& [key, expected] : scenario.expected.items()) {
      std::string section = key.substr(0, key.find('.'));
      if (!result.report.contains(section)) continue;
      ++result.checks_total;
      auto found = flat.find(key);
      bool pass = found != flat.end() && values_match(expected, found->second);
      if (!pass) ++result.checks_failed;
      Json check;
      check["key"] = key;
      check["pass"] = pass;
      check["expected"] = expected;
      check["actual"] = found != flat.end() ? found->second : Json();
      checks.push_back(std::move(check));
    }
    result.report["checks"] = std::move(checks);
  }
  return result;
}

Scenario scenario_from_json(const Json& j) {
  ProblemSpace primary = space_from_json(j);
  Scenario sc{j.value("name", std::string("scenario")), primary, {}, {}, {},
              Json::object()};
  if (j.contains("expected")) sc.expected = j.at("expected");

  auto item_space = [&](const Json& item, const char* payload) {
    if (item.is_object() && item.contains("space"))
      return std::pair<ProblemSpace, const Json*>(
          space_from_json(item.at("space")), &item.at(payload));
    return std::pair<ProblemSpace, const Json*>(primary, &item);
  };

  if (j.contains("states") || j.contains("utilities") || j.contains("policies")) {
    if (j.contains("states"))
      for (const auto& [name, item] : j.at("states").items()) {
        auto [space, cells] = item_space(item, "cells");
        sc.states.emplace(name, state_from_json(space, *cells));
      }
    if (j.contains("utilities"))
      for (const auto& [name, item] : j.at("utilities").items()) {
        auto [space, cells] = item_space(item, "cells");
        sc.utilities.emplace(name, utility_from_json(space, *cells));
      }
    if (j.contains("policies"))
      for (const auto& [name, item] : j.at("policies").items()) {
        auto [space, policy] = item_space(item, "policy");
        sc.policies.emplace(name, policy_from_json(space, *policy));
      }
    return sc;
  }

  // single-object file layout
  if (j.contains("state"))
    sc.states.emplace("state", state_from_json(primary, j.at("state")));
  if (j.contains("utility"))
    sc.utilities.emplace("utility", utility_from_json(primary, j.at("utility")));
  if (j.contains("policy"))
    sc.policies.emplace("policy", policy_from_json(primary, j.at("policy")));
  return sc;
}

Json scenario_to_json(const Scenario& scenario) {
  Json j;
  j["name"] = scenario.name;
  Json space = space_to_json(scenario.space);
  for (auto& [key, value] : space.items()) j[key] = value;

  Json states = Json::object();
  for (const auto& [name, state] : scenario.states) {
    if (state.space == scenario.space)
      states[name] = state_to_json(state);
    else
      states[name] = Json{{"space", space_to_json(state.space)},
                          {"cells", state_to_json(state)}};
  }
  j["states"] = states;

  Json utilities = Json::object();
  for (const auto& [name, utility] : scenario.utilities) {
    if (utility.space == scenario.space)
      utilities[name] = utility_to_json(utility);
    else
      utilities[name] = Json{{"space", space_to_json(utility.space)},
                             {"cells", utility_to_json(utility)}};
  }
  j["utilities"] = utilities;

  Json policies = Json::object();
  for (const auto& [name, policy] : scenario.policies) {
    if (policy.space == scenario.space)
      policies[name] = policy_to_json(policy);
    else
      policies[name] = Json{{"space", space_to_json(policy.space)},
                            {"policy", policy_to_json(policy)}};
  }
  j["policies"] = policies;

  if (!scenario.expected.empty()) j["expected"] = scenario.expected;
  return j;
}

}  // namespace cfdt
