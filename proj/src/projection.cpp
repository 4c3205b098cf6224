#include "cfdt/projection.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cfdt {

LotterySet::LotterySet(OutcomeSpace outcomes_in,
                       std::vector<std::string> names_in,
                       std::vector<Lottery> lotteries_in)
    : outcomes(std::move(outcomes_in)),
      names(std::move(names_in)),
      lotteries(std::move(lotteries_in)) {
  if (names.empty() || names.size() != lotteries.size())
    throw std::invalid_argument("lottery set needs matching names/lotteries");
  std::set<std::string> seen(names.begin(), names.end());
  if (seen.size() != names.size())
    throw std::invalid_argument("lottery names must be distinct");
  for (const Lottery& lot : lotteries) {
    if (static_cast<int>(lot.probs.size()) != outcomes.size())
      throw std::invalid_argument("lottery has wrong support size");
    Rat total(0);
    for (const Rat& p : lot.probs) {
      if (sgn(p) < 0) throw std::invalid_argument("negative lottery mass");
      total += p;
    }
    if (total != 1)
      throw std::invalid_argument("lottery must sum to exactly 1");
  }
}

int LotterySet::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (names[i] == name) return i;
  throw std::invalid_argument("unknown lottery: " + name);
}

Rat LotterySet::mean(int index) const {
  Rat total(0);
  for (int v = 0; v < outcomes.size(); ++v)
    total += lotteries[index].probs[v] * outcomes.values[v];
  return total;
}

Menu make_menu(std::initializer_list<int> indices) {
  Menu menu(indices);
  std::sort(menu.begin(), menu.end());
  menu.erase(std::unique(menu.begin(), menu.end()), menu.end());
  if (menu.empty()) throw std::invalid_argument("menu must be nonempty");
  return menu;
}

ProblemSpace menu_space(const LotterySet& lots, const Menu& menu) {
  if (menu.size() < 2)
    throw std::invalid_argument("menu space needs at least two members");
  return ProblemSpace(static_cast<int>(menu.size()), lots.outcomes);
}

void MenuAssignment::assign_independent(const Menu& menu,
                                        const UtilityTable& utility) {
  ProblemSpace space = menu_space(lots, menu);
  std::vector<std::vector<Rat>> member_marginals;
  for (int index : menu) member_marginals.push_back(lots.lotteries[index].probs);
  assign(menu, MenuEntry{utility, independent_coupling(space, member_marginals)});
}

void MenuAssignment::assign(const Menu& menu, MenuEntry entry) {
  require_same_space(entry.utility.space, entry.coupling.space, "menu entry");
  Marginals coupled = marginals(entry.coupling);
  for (std::size_t i = 0; i < menu.size(); ++i) {
    if (menu[i] < 0 || menu[i] >= lots.size())
      throw std::invalid_argument("menu member out of range");
    if (coupled.outcome[i] != lots.lotteries[menu[i]].probs)
      throw std::invalid_argument(
          "menu coupling does not reproduce the member lotteries");
  }
  entries.insert_or_assign(menu, std::move(entry));
}

namespace {

std::vector<int> argmax_members(const Menu& menu,
                                const std::vector<Rat>& values) {
  Rat best = values[0];
  for (const Rat& v : values)
    if (v > best) best = v;
  std::vector<int> chosen;
  for (std::size_t i = 0; i < menu.size(); ++i)
    if (values[i] == best) chosen.push_back(menu[i]);
  return chosen;
}

}  // namespace

std::vector<int> menu_choice(const MenuAssignment& assignment,
                             const Menu& menu) {
  if (menu.empty()) throw std::invalid_argument("menu must be nonempty");
  if (menu.size() == 1) return menu;
  auto found = assignment.entries.find(menu);
  if (found == assignment.entries.end())
    throw std::invalid_argument("no assignment for the requested menu");
  const MenuEntry& entry = found->second;
  std::vector<Rat> values;
  for (std::size_t i = 0; i < menu.size(); ++i)
    values.push_back(policy_value(
        Policy::dirac(entry.coupling.space, static_cast<int>(i)),
        entry.coupling, entry.utility));
  return argmax_members(menu, values);
}

std::vector<int> context_choice(const UtilityTable& utility, const State& state,
                                const Menu& menu, const LotterySet& lots) {
  require_same_space(utility.space, state.space, "context_choice");
  if (state.space.num_decisions() != lots.size())
    throw std::invalid_argument("state must cover every lottery");
  Marginals coupled = marginals(state);
  for (int k = 0; k < lots.size(); ++k)
    if (coupled.outcome[k] != lots.lotteries[k].probs)
      throw std::invalid_argument(
          "state marginals do not reproduce the lotteries");
  if (menu.empty()) throw std::invalid_argument("menu must be nonempty");
  std::vector<Rat> values;
  for (int member : menu) {
    if (member < 0 || member >= lots.size())
      throw std::invalid_argument("menu member out of range");
    values.push_back(
        policy_value(Policy::dirac(state.space, member), state, utility));
  }
  return argmax_members(menu, values);
}

UtilityTable pairwise_win_indicator(const ProblemSpace& space) {
  return UtilityTable::from_function(
      space, [&space](int d, std::span<const int> yvec, int) {
        Rat wins(0);
        for (int other = 0; other < space.num_decisions(); ++other) {
          if (other == d) continue;
          if (space.outcomes.values[yvec[d]] > space.outcomes.values[yvec[other]])
            wins += 1;
        }
        return wins;
      });
}

UtilityTable net_win_indicator(const ProblemSpace& space) {
  if (space.num_decisions() != 2)
    throw std::invalid_argument("net_win_indicator requires two decisions");
  return UtilityTable::from_function(
      space, [&space](int d, std::span<const int> yvec, int) {
        const Rat& own = space.outcomes.values[yvec[d]];
        const Rat& other = space.outcomes.values[yvec[1 - d]];
        return own > other ? Rat(1) : own < other ? Rat(-1) : Rat(0);
      });
}

Verdict RelationMatrix::verdict(int i, int j) const {
  if (weak[i][j] && weak[j][i]) return Verdict::Indifferent;
  return weak[i][j] ? Verdict::PrefersLeft : Verdict::PrefersRight;
}

Comparator RelationMatrix::comparator() const {
  return [matrix = *this](int i, int j) { return matrix.verdict(i, j); };
}

RelationMatrix revealed_relation(const BinaryChooser& chooser,
                                 const std::vector<std::string>& names) {
  const int count = static_cast<int>(names.size());
  RelationMatrix matrix{names,
                        std::vector<std::vector<bool>>(
                            count, std::vector<bool>(count, false))};
  for (int i = 0; i < count; ++i) matrix.weak[i][i] = true;
  for (int i = 0; i < count; ++i)
    for (int j = i + 1; j < count; ++j) {
      Menu pair = {i, j};
      std::vector<int> chosen = chooser(pair);
      if (chosen.empty())
        throw std::invalid_argument("chooser returned an empty set");
      for (int member : chosen)
        if (member != i && member != j)
          throw std::invalid_argument("chooser picked outside the menu");
      matrix.weak[i][j] =
          std::find(chosen.begin(), chosen.end(), i) != chosen.end();
      matrix.weak[j][i] =
          std::find(chosen.begin(), chosen.end(), j) != chosen.end();
    }
  return matrix;
}

namespace {

Menu menu_from_mask(int mask) {
  Menu menu;
  for (int i = 0; mask >> i; ++i)
    if (mask & (1 << i)) menu.push_back(i);
  return menu;
}

}  // namespace

ChoiceRecord full_choice_record(int count, const BinaryChooser& chooser) {
  ChoiceRecord record;
  for (int mask = 1; mask < (1 << count); ++mask) {
    Menu menu = menu_from_mask(mask);
    std::vector<int> chosen = chooser(menu);
    if (chosen.empty())
      throw std::invalid_argument("chooser returned an empty set");
    record[menu] = std::move(chosen);
  }
  return record;
}

SenReport sen_check(const ChoiceRecord& record, int count) {
  auto choice_of = [&](int mask) -> const std::vector<int>& {
    auto found = record.find(menu_from_mask(mask));
    if (found == record.end())
      throw std::invalid_argument("choice record does not cover all menus");
    if (found->second.empty())
      throw std::invalid_argument("choice record has an empty choice");
    return found->second;
  };
  auto contains = [](const std::vector<int>& set, int d) {
    return std::find(set.begin(), set.end(), d) != set.end();
  };

  SenReport report;
  for (int big = 1; big < (1 << count); ++big) {
    const std::vector<int>& chosen_big = choice_of(big);
    for (int small = 1; small < big; ++small) {
      if ((small & big) != small) continue;
      const std::vector<int>& chosen_small = choice_of(small);
      if (report.alpha_holds) {
        for (int d : chosen_big)
          if ((small & (1 << d)) && !contains(chosen_small, d)) {
            report.alpha_holds = false;
            report.alpha_violation =
                SenViolation{menu_from_mask(small), menu_from_mask(big), d};
            break;
          }
      }
      if (report.beta_holds) {
        for (int d : chosen_small) {
          for (int dprime : chosen_small)
            if (contains(chosen_big, dprime) && !contains(chosen_big, d)) {
              report.beta_holds = false;
              report.beta_violation =
                  SenViolation{menu_from_mask(small), menu_from_mask(big), d};
              break;
            }
          if (!report.beta_holds) break;
        }
      }
      if (!report.alpha_holds && !report.beta_holds) return report;
    }
  }
  return report;
}

LanzaniResult lanzani_decompose(const UtilityTable& utility) {
  const ProblemSpace& space = utility.space;
  if (space.num_decisions() != 2)
    throw std::invalid_argument("lanzani_decompose requires two decisions");
  if (space.num_covariates() != 1)
    throw std::invalid_argument("lanzani_decompose takes covariate-free tables");
  const int M = space.num_outcomes();

  auto cell = [&](int d, int y0, int y1) {
    const int pair[] = {y0, y1};
    return utility.at(d, space.yvec_index(pair), 0);
  };
  // own-outcome-first view of the table
  auto w = [&](int own, int other) { return cell(0, own, other); };

  for (int s = 0; s < M; ++s)
    for (int t = 0; t < M; ++t)
      if (cell(0, s, t) != cell(1, t, s))
        throw std::invalid_argument(
            "utility is not label-symmetric; decomposition undefined");

  LanzaniResult result;
  auto skew = [&](int s, int t) { return Rat(w(s, t) - w(t, s)); };

  result.u.assign(M, Rat(0));
  for (int s = 0; s < M; ++s) result.u[s] = skew(s, 0);
  result.feasible = true;
  for (int s = 0; s < M; ++s)
    for (int t = 0; t < M; ++t)
      if (skew(s, t) != result.u[s] - result.u[t]) {
        result.feasible = false;
        result.certificate.push_back({s, t, 0});
      }
  if (!result.feasible) return result;

  result.h.assign(M, std::vector<Rat>(M, Rat(0)));
  for (int s = 0; s < M; ++s)
    for (int t = 0; t < M; ++t)
      result.h[s][t] =
          (w(s, t) + w(t, s) - result.u[s] - result.u[t]) / 2;
  // move the constant so h vanishes at the smallest outcome pair
  Rat shift = result.h[0][0];
  if (sgn(shift) != 0) {
    for (auto& row : result.h)
      for (Rat& v : row) v -= shift;
    for (Rat& v : result.u) v += shift;
  }
  return result;
}

}  // namespace cfdt
