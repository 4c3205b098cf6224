#ifndef CFDT_AXIOMS_HPP
#define CFDT_AXIOMS_HPP

#include <array>
#include <functional>
#include <optional>
#include <set>
#include <utility>

#include "cfdt/valuation.hpp"

namespace cfdt {

// Structural classes a utility table can fall into. Membership is nested:
// Outcome implies Standard implies Additive.
enum class UtilityClass { Outcome, Standard, Additive };

std::set<UtilityClass> classify_utility(const UtilityTable& utility);

using ValueFunctional = std::function<Rat(const Law&)>;

ValueFunctional expected_utility_functional(const UtilityTable& utility);

// Checks whether a strict preference between p and q survives mixing both
// with r at weight alpha in (0, 1]. Vacuously holds when the premise
// value(p) > value(q) fails.
struct IndependenceReport {
  bool holds = true;
  bool premise = false;
  Rat alpha;
  Rat value_p, value_q, value_mix_p, value_mix_q;
};

IndependenceReport check_independence(const Law& p, const Law& q, const Law& r,
                                      const Rat& alpha,
                                      const ValueFunctional& value);

// Given values V(p) > V(q) > V(r), returns (alpha, beta) with
// alpha * V(p) + (1-alpha) * V(r) > V(q) > beta * V(p) + (1-beta) * V(r),
// via the exact interpolation weight between the extremes. Throws when the
// strict chain fails.
std::pair<Rat, Rat> continuity_witness(const Law& p, const Law& q, const Law& r,
                                       const UtilityTable& utility);

// Weak pairwise comparator over an index set: returns the verdict between
// items i and j.
using Comparator = std::function<Verdict(int, int)>;

struct TransitivityReport {
  bool holds = true;
  // First ordered triple (i, j, k) with i weakly above j, j weakly above k,
  // but i not weakly above k.
  std::optional<std::array<int, 3>> violation;
};

TransitivityReport transitivity_scan(std::span<const Law> laws,
                                     const ValueFunctional& value);
TransitivityReport transitivity_scan(int count, const Comparator& comparator);

// Compares the value of dirac(d) across two states degenerate at covariate x.
// Flags which marginal-equality premise the state pair satisfies: equal
// realized-coordinate marginal only, or all coordinate marginals equal.
struct MarginalIndifferenceReport {
  bool premise_realized_marginal = false;  // Y(d) marginals coincide
  bool premise_all_marginals = false;      // every Y(k) marginal coincides
  bool holds = true;                       // values equal whenever a premise holds
  Rat value_a, value_b;
};

MarginalIndifferenceReport check_marginal_indifference(
    const UtilityTable& utility, int d, int x, const State& state_a,
    const State& state_b);

}  // namespace cfdt

#endif
