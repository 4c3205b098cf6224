#include "cfdt/axioms.hpp"

#include <stdexcept>

#include "cfdt/reduction.hpp"

namespace cfdt {

std::set<UtilityClass> classify_utility(const UtilityTable& utility) {
  std::set<UtilityClass> classes;
  if (additive_decompose(utility).additive())
    classes.insert(UtilityClass::Additive);
  if (std::holds_alternative<StandardUtility>(reduce_to_standard(utility)))
    classes.insert(UtilityClass::Standard);
  if (std::holds_alternative<OutcomeUtility>(reduce_to_outcome(utility)))
    classes.insert(UtilityClass::Outcome);
  return classes;
}

ValueFunctional expected_utility_functional(const UtilityTable& utility) {
  return [utility](const Law& law) { return expected_utility(law, utility); };
}

IndependenceReport check_independence(const Law& p, const Law& q, const Law& r,
                                      const Rat& alpha,
                                      const ValueFunctional& value) {
  if (sgn(alpha) <= 0 || alpha > 1)
    throw std::invalid_argument("mixing weight must lie in (0, 1]");
  IndependenceReport report;
  report.alpha = alpha;
  report.value_p = value(p);
  report.value_q = value(q);
  report.premise = report.value_p > report.value_q;
  Law mix_p = mix2(p, r, alpha);
  Law mix_q = mix2(q, r, alpha);
  report.value_mix_p = value(mix_p);
  report.value_mix_q = value(mix_q);
  report.holds = !report.premise || report.value_mix_p > report.value_mix_q;
  return report;
}

std::pair<Rat, Rat> continuity_witness(const Law& p, const Law& q, const Law& r,
                                       const UtilityTable& utility) {
  Rat vp = expected_utility(p, utility);
  Rat vq = expected_utility(q, utility);
  Rat vr = expected_utility(r, utility);
  if (!(vp > vq && vq > vr))
    throw std::invalid_argument(
        "continuity_witness needs a strict chain p > q > r");
  Rat star = (vq - vr) / (vp - vr);
  Rat alpha = (star + 1) / 2;
  Rat beta = star / 2;
  // re-verify the defining inequalities exactly
  Rat upper = alpha * vp + (1 - alpha) * vr;
  Rat lower = beta * vp + (1 - beta) * vr;
  if (!(upper > vq && vq > lower))
    throw std::logic_error("continuity witness failed to re-verify");
  return {std::move(alpha), std::move(beta)};
}

TransitivityReport transitivity_scan(std::span<const Law> laws,
                                     const ValueFunctional& value) {
  if (laws.size() < 3)
    throw std::invalid_argument("transitivity scan needs at least three laws");
  std::vector<Rat> values;
  values.reserve(laws.size());
  for (const Law& law : laws) values.push_back(value(law));
  Comparator comparator = [&values](int i, int j) {
    return values[i] > values[j]   ? Verdict::PrefersLeft
           : values[i] < values[j] ? Verdict::PrefersRight
                                   : Verdict::Indifferent;
  };
  return transitivity_scan(static_cast<int>(laws.size()), comparator);
}

TransitivityReport transitivity_scan(int count, const Comparator& comparator) {
  if (count < 3)
    throw std::invalid_argument("transitivity scan needs at least three items");
  auto weakly_above = [&](int i, int j) {
    Verdict v = comparator(i, j);
    return v == Verdict::PrefersLeft || v == Verdict::Indifferent;
  };
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < count; ++j) {
      if (j == i) continue;
      for (int k = 0; k < count; ++k) {
        if (k == i || k == j) continue;
        if (weakly_above(i, j) && weakly_above(j, k) && !weakly_above(i, k))
          return TransitivityReport{false, std::array<int, 3>{i, j, k}};
      }
    }
  return TransitivityReport{};
}

MarginalIndifferenceReport check_marginal_indifference(
    const UtilityTable& utility, int d, int x, const State& state_a,
    const State& state_b) {
  require_same_space(state_a.space, utility.space, "check_marginal_indifference");
  require_same_space(state_b.space, utility.space, "check_marginal_indifference");
  Marginals ma = marginals(state_a);
  Marginals mb = marginals(state_b);
  if (ma.covariate[x] != 1 || mb.covariate[x] != 1)
    throw std::invalid_argument(
        "both states must be degenerate at the given covariate");

  MarginalIndifferenceReport report;
  report.premise_realized_marginal = ma.outcome[d] == mb.outcome[d];
  report.premise_all_marginals = ma.outcome == mb.outcome;

  Policy pick = Policy::dirac(utility.space, d);
  report.value_a = policy_value(pick, state_a, utility);
  report.value_b = policy_value(pick, state_b, utility);
  if (report.premise_realized_marginal || report.premise_all_marginals)
    report.holds = report.value_a == report.value_b;
  return report;
}

}  // namespace cfdt
