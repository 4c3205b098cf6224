#ifndef CFDT_JSON_IO_HPP
#define CFDT_JSON_IO_HPP

#include "json.hpp"

#include "cfdt/extended.hpp"
#include "cfdt/identification.hpp"
#include "cfdt/model.hpp"
#include "cfdt/projection.hpp"
#include "cfdt/reduction.hpp"

namespace cfdt {

using Json = nlohmann::ordered_json;

// Scenario-file fragments. Probabilities in state cells must be exact
// rational strings; numeric literals are rejected there.
Json space_to_json(const ProblemSpace& space);
ProblemSpace space_from_json(const Json& j);

Json state_to_json(const State& state);
State state_from_json(const ProblemSpace& space, const Json& cells);

Json utility_to_json(const UtilityTable& utility);
UtilityTable utility_from_json(const ProblemSpace& space, const Json& cells);

Json law_to_json(const Law& law);

Json policy_to_json(const Policy& policy);
Policy policy_from_json(const ProblemSpace& space, const Json& j);

// Report fragments (one-way).
Json marginals_to_json(const Marginals& m);
Json bound_to_json(const BoundResult& bound);
Json independence_to_json(const IndependenceReport& report);
Json sen_to_json(const SenReport& report, const std::vector<std::string>& names);
Json relation_to_json(const RelationMatrix& matrix);
Json crossing_to_json(const CrossingReport& report);
Json equivalence_to_json(const EquivalenceReport& report);
Json contrast_to_json(const ContrastForm& form, const Rat& tabulate_step);
Json phi_to_json(const PhiPair& phi, const Rat& tabulate_step);

}  // namespace cfdt

#endif
