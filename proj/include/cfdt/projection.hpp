#ifndef CFDT_PROJECTION_HPP
#define CFDT_PROJECTION_HPP

#include <array>
#include <map>
#include <optional>
#include <string>

#include "cfdt/axioms.hpp"

namespace cfdt {

// Distribution over the outcome space.
struct Lottery {
  std::vector<Rat> probs;

  bool operator==(const Lottery&) const = default;
};

// Named lotteries over a common outcome space; the realized-outcome side of
// the projections.
struct LotterySet {
  OutcomeSpace outcomes;
  std::vector<std::string> names;
  std::vector<Lottery> lotteries;

  LotterySet(OutcomeSpace outcomes_in, std::vector<std::string> names_in,
             std::vector<Lottery> lotteries_in);

  int size() const { return static_cast<int>(names.size()); }
  int index_of(const std::string& name) const;
  Rat mean(int index) const;
};

// A menu is a sorted set of lottery indices.
using Menu = std::vector<int>;

Menu make_menu(std::initializer_list<int> indices);

// Per-menu evaluation data: a utility and a coupling over the menu's
// coordinates (coordinate i is the i-th menu member). The coupling's
// marginals must reproduce the member lotteries.
struct MenuEntry {
  UtilityTable utility;
  State coupling;
};

struct MenuAssignment {
  LotterySet lots;
  std::map<Menu, MenuEntry> entries;

  MenuAssignment(LotterySet lots_in) : lots(std::move(lots_in)) {}

  // Registers a menu with the given utility and the product coupling of the
  // member lotteries.
  void assign_independent(const Menu& menu, const UtilityTable& utility);
  void assign(const Menu& menu, MenuEntry entry);
};

// Builds the K-coordinate problem space for a menu over the lottery set's
// outcomes. Requires at least two members; singleton menus are resolved by
// menu_choice without evaluation.
ProblemSpace menu_space(const LotterySet& lots, const Menu& menu);

// Win-count utility 1{y_d > y_d'} summed over the other coordinates.
UtilityTable pairwise_win_indicator(const ProblemSpace& space);
// Signed pairwise comparison 1{y_d > y_d'} - 1{y_d' > y_d} (requires K = 2).
UtilityTable net_win_indicator(const ProblemSpace& space);

// Menu-dependent choice: full argmax set of expected utility under the
// menu's own (utility, coupling) pair. Returns lottery indices.
std::vector<int> menu_choice(const MenuAssignment& assignment, const Menu& menu);

// Context-dependent choice: argmax over the menu of the fixed global values
// computed from one utility/state pair covering every lottery. The state's
// marginals must reproduce all lotteries.
std::vector<int> context_choice(const UtilityTable& utility, const State& state,
                                const Menu& menu, const LotterySet& lots);

// Pairwise relation matrix harvested from a binary-menu chooser.
struct RelationMatrix {
  std::vector<std::string> names;
  std::vector<std::vector<bool>> weak;  // weak[i][j]: i weakly above j

  bool strictly_above(int i, int j) const { return weak[i][j] && !weak[j][i]; }
  Verdict verdict(int i, int j) const;
  Comparator comparator() const;
};

using BinaryChooser = std::function<std::vector<int>(const Menu&)>;

RelationMatrix revealed_relation(const BinaryChooser& chooser,
                                 const std::vector<std::string>& names);

// Choice record over every nonempty menu of an index set.
using ChoiceRecord = std::map<Menu, std::vector<int>>;

ChoiceRecord full_choice_record(int count, const BinaryChooser& chooser);

struct SenViolation {
  Menu smaller;
  Menu larger;
  int element;
};

struct SenReport {
  bool alpha_holds = true;
  bool beta_holds = true;
  std::optional<SenViolation> alpha_violation;
  std::optional<SenViolation> beta_violation;

  bool warp() const { return alpha_holds && beta_holds; }
};

// Exhaustively verifies Sen's contraction and expansion conditions over all
// menu pairs of the record; reports the first violation of each.
SenReport sen_check(const ChoiceRecord& record, int count);

// Decomposition of a label-symmetric two-coordinate utility as
// u(own outcome) + symmetric h(own, other). Feasible exactly when the
// skew part of the utility telescopes along outcome chains.
struct LanzaniResult {
  bool feasible = false;
  std::vector<Rat> u;                  // per outcome, u[0] anchored
  std::vector<std::vector<Rat>> h;     // symmetric, h[0][0] = 0
  std::vector<std::array<int, 3>> certificate;  // violating outcome triples
};

LanzaniResult lanzani_decompose(const UtilityTable& utility);

}  // namespace cfdt

#endif
