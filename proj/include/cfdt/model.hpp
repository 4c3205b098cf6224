#ifndef CFDT_MODEL_HPP
#define CFDT_MODEL_HPP

#include <functional>
#include <span>
#include <tuple>
#include <vector>

#include "cfdt/space.hpp"

namespace cfdt {

// Joint distribution over outcome vectors and covariates (the state of
// nature). Masses are exact, nonnegative and sum to one.
struct State {
  ProblemSpace space;
  std::vector<Rat> mass;  // indexed yvec-major: yindex * |X| + x

  State(ProblemSpace space_in, std::vector<Rat> mass_in);

  const Rat& at(long yindex, int x) const;
  Rat& at(long yindex, int x);

  // Builds a state from sparse cells (yvec, x, prob); unlisted cells are 0.
  static State from_cells(
      const ProblemSpace& space,
      const std::vector<std::tuple<std::vector<int>, int, Rat>>& cells);

  bool operator==(const State&) const = default;
};

// Point mass at one (yvec, x) cell.
State dirac_state(const ProblemSpace& space, std::span<const int> yvec,
                  int x = 0);

// Product coupling of per-decision outcome marginals, concentrated at
// covariate x.
State independent_coupling(const ProblemSpace& space,
                           const std::vector<std::vector<Rat>>& marginals,
                           int x = 0);

enum class PolicyKind { Dirac, CovariateMap, OracleMap };

// Conditional distribution over decisions given (outcome vector, covariate).
// Dirac policies always pick one decision; covariate policies ignore the
// outcome vector.
struct Policy {
  ProblemSpace space;
  PolicyKind kind;
  int dirac_decision = -1;
  std::vector<Rat> table;  // CovariateMap: x*K + d; OracleMap: (y*|X| + x)*K + d

  static Policy dirac(const ProblemSpace& space, int decision);
  static Policy covariate_map(const ProblemSpace& space,
                              const std::vector<std::vector<Rat>>& per_x);
  static Policy oracle_map(const ProblemSpace& space,
                           std::vector<Rat> full_table);
  static Policy uniform(const ProblemSpace& space);

  Rat prob(int d, long yindex, int x) const;

  bool operator==(const Policy&) const = default;

 private:
  Policy(ProblemSpace space_in, PolicyKind kind_in)
      : space(std::move(space_in)), kind(kind_in) {}
};

// Distribution on the extended space D x Y^D x X.
struct Law {
  ProblemSpace space;
  std::vector<Rat> mass;  // ((d * Ycount + yindex) * |X| + x)

  Law(ProblemSpace space_in, std::vector<Rat> mass_in);

  const Rat& at(int d, long yindex, int x) const;
  Rat& at(int d, long yindex, int x);

  bool operator==(const Law&) const = default;
};

// Total utility table on D x Y^D x X.
struct UtilityTable {
  ProblemSpace space;
  std::vector<Rat> value;  // same indexing as Law::mass

  UtilityTable(ProblemSpace space_in, std::vector<Rat> value_in);

  const Rat& at(int d, long yindex, int x) const;
  Rat& at(int d, long yindex, int x);

  static UtilityTable from_function(
      const ProblemSpace& space,
      const std::function<Rat(int d, std::span<const int> yvec, int x)>& fn);
  static UtilityTable zero(const ProblemSpace& space);

  bool operator==(const UtilityTable&) const = default;
};

// P^pi(d, y, x) = pi(d; y, x) * P(y, x).
Law induced_law(const Policy& policy, const State& state);

// Pointwise convex combination of laws. Weights must be nonnegative and sum
// to one exactly.
Law mix(std::span<const Law> laws, std::span<const Rat> weights);
Law mix2(const Law& a, const Law& b, const Rat& weight_a);

struct Marginals {
  std::vector<std::vector<Rat>> outcome;  // outcome[k][v] = P(Y(k) = v)
  std::vector<Rat> covariate;
};

Marginals marginals(const State& state);
Marginals marginals(const Law& law);
std::vector<Rat> decision_marginal(const Law& law);

}  // namespace cfdt

#endif
