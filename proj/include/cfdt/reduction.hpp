#ifndef CFDT_REDUCTION_HPP
#define CFDT_REDUCTION_HPP

#include <optional>
#include <variant>

#include "cfdt/model.hpp"

namespace cfdt {

// Coordinates of one utility/law cell.
struct Cell {
  int d = 0;
  long yindex = 0;
  int x = 0;
};

// Telescoping decomposition of a table into per-coordinate components
// u_k(d; y_k, x). residual is the max absolute deviation between the table
// and the component sum over all cells; it is 0 exactly when the table is
// additive in the potential outcomes.
struct AdditiveDecomposition {
  ProblemSpace space;
  std::vector<std::vector<Rat>> components;  // [k][(d * M + y) * |X| + x]
  Rat residual;
  std::optional<Cell> worst_cell;  // first cell attaining the residual

  const Rat& component(int k, int d, int y, int x) const;
  Rat reconstruct(int d, std::span<const int> yvec, int x) const;
  bool additive() const { return sgn(residual) == 0; }
};

AdditiveDecomposition additive_decompose(const UtilityTable& utility,
                                         std::span<const int> baseline);
// Default baseline: the lexicographically smallest outcome vector.
AdditiveDecomposition additive_decompose(const UtilityTable& utility);

// Utility depending on the outcome vector only through the realized
// coordinate: u(d; y_d, x).
struct StandardUtility {
  ProblemSpace space;
  std::vector<Rat> value;  // (d * M + y) * |X| + x

  const Rat& at(int d, int y, int x) const;
  Rat& at(int d, int y, int x);
  UtilityTable lift() const;
  static StandardUtility zero(const ProblemSpace& space);
};

// Two cells whose values should agree but do not.
struct CellPairWitness {
  Cell first;
  Cell second;
  Rat first_value;
  Rat second_value;
};

// Succeeds iff for every (d, x) the table is constant across outcome vectors
// sharing y_d; otherwise reports the first violating pair of cells.
std::variant<StandardUtility, CellPairWitness> reduce_to_standard(
    const UtilityTable& utility);

// Utility depending only on the realized outcome value: u(y_d).
struct OutcomeUtility {
  OutcomeSpace outcomes;
  std::vector<Rat> value;  // per outcome

  UtilityTable lift(const ProblemSpace& space) const;
};

// Succeeds iff all cells with equal realized outcome agree across decisions,
// covariates, and counterfactual coordinates.
std::variant<OutcomeUtility, CellPairWitness> reduce_to_outcome(
    const UtilityTable& utility);

// Split of a binary-decision table as u(d; y_d, x) + h(y, x) with h
// decision-independent, normalized so h vanishes at the baseline vector.
// exact is true iff the reconstruction matches the table pointwise.
struct BinarySplit {
  StandardUtility standard_part;
  std::vector<Rat> shared_part;  // h: yindex * |X| + x
  bool exact = false;
  std::optional<Cell> failure_cell;

  const Rat& shared(long yindex, int x) const;
};

BinarySplit binary_split(const UtilityTable& utility);  // requires K == 2

}  // namespace cfdt

#endif
