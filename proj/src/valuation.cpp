#include "cfdt/valuation.hpp"

#include <cmath>
#include <stdexcept>

namespace cfdt {

Rat expected_utility(const Law& law, const UtilityTable& utility) {
  require_same_space(law.space, utility.space, "expected_utility");
  Rat total(0);
  for (std::size_t i = 0; i < law.mass.size(); ++i) {
    if (sgn(law.mass[i]) == 0) continue;
    total += law.mass[i] * utility.value[i];
  }
  return total;
}

Rat policy_value(const Policy& policy, const State& state,
                 const UtilityTable& utility) {
  return expected_utility(induced_law(policy, state), utility);
}

Preference compare(const Law& left, const Law& right,
                   const UtilityTable& utility) {
  Rat lv = expected_utility(left, utility);
  Rat rv = expected_utility(right, utility);
  Verdict verdict = lv > rv   ? Verdict::PrefersLeft
                    : lv < rv ? Verdict::PrefersRight
                              : Verdict::Indifferent;
  return Preference{verdict, std::move(lv), std::move(rv)};
}

UtilityTable affine_transform(const UtilityTable& utility, const Rat& scale,
                              const Rat& shift) {
  if (sgn(scale) <= 0)
    throw std::invalid_argument("affine_transform needs a positive scale");
  UtilityTable out = utility;
  for (Rat& v : out.value) v = scale * v + shift;
  return out;
}

UtilityTable bell_utility(const ProblemSpace& space, double lambda) {
  if (!(lambda > 0))
    throw std::invalid_argument("bell_utility needs lambda > 0");
  const std::vector<Rat>& values = space.outcomes.values;
  std::vector<double> dvalues(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    dvalues[i] = values[i].get_d();
  return UtilityTable::from_function(
      space, [&](int d, std::span<const int> yvec, int) {
        double own = dvalues[yvec[d]];
        double total = own;
        for (int other = 0; other < space.num_decisions(); ++other) {
          if (other == d) continue;
          double gap = own - dvalues[yvec[other]];
          total += 1.0 - std::exp(-lambda * gap);
        }
        return rat_from_double(total);
      });
}

}  // namespace cfdt
