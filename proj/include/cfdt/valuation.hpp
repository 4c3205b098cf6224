#ifndef CFDT_VALUATION_HPP
#define CFDT_VALUATION_HPP

#include "cfdt/model.hpp"

namespace cfdt {

enum class Verdict { PrefersLeft, Indifferent, PrefersRight };

struct Preference {
  Verdict verdict;
  Rat left_value;
  Rat right_value;
};

// Exact expected utility of a law: sum over all cells of utility * mass.
Rat expected_utility(const Law& law, const UtilityTable& utility);

// Convenience: value of deploying `policy` in `state`.
Rat policy_value(const Policy& policy, const State& state,
                 const UtilityTable& utility);

// Orders two laws by exact comparison of expected utilities; carries both
// values so callers can audit closeness.
Preference compare(const Law& left, const Law& right,
                   const UtilityTable& utility);

// Pointwise scale * u + shift; scale must be strictly positive.
UtilityTable affine_transform(const UtilityTable& utility, const Rat& scale,
                              const Rat& shift);

// Regret/rejoice utility: u(d; y) = y_d + sum over d' != d of
// (1 - exp(-lambda * (y_d - y_d'))), evaluated in double precision and frozen
// to exact rationals entry by entry. Requires lambda > 0.
UtilityTable bell_utility(const ProblemSpace& space, double lambda);

}  // namespace cfdt

#endif
