#include "cfdt/json_io.hpp"

#include <stdexcept>

namespace cfdt {

namespace {

Rat rational_field(const Json& j, const char* what, bool allow_integers) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (allow_integers && j.is_number_integer())
    return Rat(static_cast<long>(j.get<long long>()));
  throw std::invalid_argument(std::string(what) +
                              " must be an exact rational string");
}

std::vector<int> yvec_from_json(const ProblemSpace& space, const Json& j) {
  if (!j.is_array() || static_cast<int>(j.size()) != space.num_decisions())
    throw std::invalid_argument("outcome vector must list one label per decision");
  std::vector<int> yvec;
  for (const Json& label : j)
    yvec.push_back(space.outcomes.index_of(label.get<std::string>()));
  return yvec;
}

Json yvec_to_json(const ProblemSpace& space, long yindex) {
  Json labels = Json::array();
  for (int v : space.yvec_at(yindex)) labels.push_back(space.outcomes.labels[v]);
  return labels;
}

int covariate_from_json(const ProblemSpace& space, const Json& cell) {
  if (!cell.contains("x")) {
    if (space.num_covariates() == 1) return 0;
    throw std::invalid_argument("cell must name a covariate");
  }
  return space.covariate_index(cell.at("x").get<std::string>());
}

}  // namespace

Json space_to_json(const ProblemSpace& space) {
  Json j;
  j["decisions"] = space.num_decisions();
  Json outcomes = Json::array();
  for (int v = 0; v < space.num_outcomes(); ++v)
    outcomes.push_back({{"label", space.outcomes.labels[v]},
                        {"value", rat_to_string(space.outcomes.values[v])}});
  j["outcomes"] = outcomes;
  if (space.covariates != std::vector<std::string>{"*"})
    j["covariates"] = space.covariates;
  return j;
}

ProblemSpace space_from_json(const Json& j) {
  int decisions = j.at("decisions").get<int>();
  std::vector<std::string> labels;
  std::vector<Rat> values;
  for (const Json& entry : j.at("outcomes")) {
    labels.push_back(entry.at("label").get<std::string>());
    values.push_back(rational_field(entry.at("value"), "outcome value", true));
  }
  std::vector<std::string> covariates{"*"};
  if (j.contains("covariates"))
    covariates = j.at("covariates").get<std::vector<std::string>>();
  return ProblemSpace(decisions, OutcomeSpace(std::move(labels), std::move(values)),
                      std::move(covariates));
}

Json state_to_json(const State& state) {
  Json cells = Json::array();
  const ProblemSpace& space = state.space;
  for (long yi = 0; yi < space.outcome_vector_count(); ++yi)
    for (int x = 0; x < space.num_covariates(); ++x) {
      const Rat& mass = state.at(yi, x);
      if (sgn(mass) == 0) continue;
      Json cell;
      cell["y"] = yvec_to_json(space, yi);
      cell["x"] = space.covariates[x];
      cell["prob"] = rat_to_string(mass);
      cells.push_back(cell);
    }
  return cells;
}

State state_from_json(const ProblemSpace& space, const Json& cells) {
  if (!cells.is_array())
    throw std::invalid_argument("state must be a list of cells");
  std::vector<std::tuple<std::vector<int>, int, Rat>> parsed;
  for (const Json& cell : cells)
    parsed.emplace_back(yvec_from_json(space, cell.at("y")),
                        covariate_from_json(space, cell),
                        rational_field(cell.at("prob"), "state probability",
                                       /*allow_integers=*/false));
  return State::from_cells(space, parsed);
}

Json utility_to_json(const UtilityTable& utility) {
  Json cells = Json::array();
  const ProblemSpace& space = utility.space;
  for (int d = 0; d < space.num_decisions(); ++d)
    for (long yi = 0; yi < space.outcome_vector_count(); ++yi)
      for (int x = 0; x < space.num_covariates(); ++x) {
        const Rat& value = utility.at(d, yi, x);
        if (sgn(value) == 0) continue;
        Json cell;
        cell["d"] = d;
        cell["y"] = yvec_to_json(space, yi);
        cell["x"] = space.covariates[x];
        cell["value"] = rat_to_string(value);
        cells.push_back(cell);
      }
  return cells;
}

UtilityTable utility_from_json(const ProblemSpace& space, const Json& cells) {
  if (!cells.is_array())
    throw std::invalid_argument("utility must be a list of cells");
  UtilityTable table = UtilityTable::zero(space);
  for (const Json& cell : cells) {
    int d = cell.at("d").get<int>();
    if (d < 0 || d >= space.num_decisions())
      throw std::invalid_argument("utility decision out of range");
    long yi = space.yvec_index(yvec_from_json(space, cell.at("y")));
    int x = covariate_from_json(space, cell);
    table.at(d, yi, x) = rational_field(cell.at("value"), "utility value", true);
  }
  return table;
}

Json law_to_json(const Law& law) {
  Json cells = Json::array();
  const ProblemSpace& space = law.space;
  for (int d = 0; d < space.num_decisions(); ++d)
    for (long yi = 0; yi < space.outcome_vector_count(); ++yi)
      for (int x = 0; x < space.num_covariates(); ++x) {
        const Rat& mass = law.at(d, yi, x);
        if (sgn(mass) == 0) continue;
        Json cell;
        cell["d"] = d;
        cell["y"] = yvec_to_json(space, yi);
        cell["x"] = space.covariates[x];
        cell["prob"] = rat_to_string(mass);
        cells.push_back(cell);
      }
  return cells;
}

Json policy_to_json(const Policy& policy) {
  Json j;
  const ProblemSpace& space = policy.space;
  switch (policy.kind) {
    case PolicyKind::Dirac:
      j["kind"] = "dirac";
      j["d"] = policy.dirac_decision;
      break;
    case PolicyKind::CovariateMap: {
      j["kind"] = "covariate";
      Json rows = Json::array();
      for (int x = 0; x < space.num_covariates(); ++x) {
        Json dist = Json::array();
        for (int d = 0; d < space.num_decisions(); ++d)
          dist.push_back(rat_to_string(policy.prob(d, 0, x)));
        rows.push_back({{"x", space.covariates[x]}, {"dist", dist}});
      }
      j["table"] = rows;
      break;
    }
    case PolicyKind::OracleMap: {
      j["kind"] = "oracle";
      Json rows = Json::array();
      for (long yi = 0; yi < space.outcome_vector_count(); ++yi)
        for (int x = 0; x < space.num_covariates(); ++x) {
          Json dist = Json::array();
          for (int d = 0; d < space.num_decisions(); ++d)
            dist.push_back(rat_to_string(policy.prob(d, yi, x)));
          rows.push_back({{"y", yvec_to_json(space, yi)},
                          {"x", space.covariates[x]},
                          {"dist", dist}});
        }
      j["table"] = rows;
      break;
    }
  }
  return j;
}

Policy policy_from_json(const ProblemSpace& space, const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "dirac") return Policy::dirac(space, j.at("d").get<int>());
  auto parse_dist = [&](const Json& dist) {
    std::vector<Rat> out;
    for (const Json& p : dist)
      out.push_back(rational_field(p, "policy probability", false));
    return out;
  };
  if (kind == "covariate") {
    std::vector<std::vector<Rat>> per_x(space.num_covariates());
    for (const Json& row : j.at("table"))
      per_x[space.covariate_index(row.at("x").get<std::string>())] =
          parse_dist(row.at("dist"));
    return Policy::covariate_map(space, per_x);
  }
  if (kind == "oracle") {
    std::vector<Rat> table(static_cast<std::size_t>(
                               space.outcome_vector_count()) *
                               space.num_covariates() * space.num_decisions(),
                           Rat(0));
    std::vector<bool> filled(static_cast<std::size_t>(
                                 space.outcome_vector_count()) *
                                 space.num_covariates(),
                             false);
    for (const Json& row : j.at("table")) {
      long yi = space.yvec_index(yvec_from_json(space, row.at("y")));
      int x = covariate_from_json(space, row);
      std::vector<Rat> dist = parse_dist(row.at("dist"));
      if (static_cast<int>(dist.size()) != space.num_decisions())
        throw std::invalid_argument("oracle row has wrong distribution size");
      std::size_t slot =
          static_cast<std::size_t>(yi) * space.num_covariates() + x;
      filled[slot] = true;
      for (int d = 0; d < space.num_decisions(); ++d)
        table[slot * space.num_decisions() + d] = dist[d];
    }
    for (bool f : filled)
      if (!f)
        throw std::invalid_argument("oracle policy must cover every cell");
    return Policy::oracle_map(space, std::move(table));
  }
  throw std::invalid_argument("unknown policy kind: " + kind);
}

Json marginals_to_json(const Marginals& m) {
  Json j;
  Json outcome = Json::array();
  for (const auto& dist : m.outcome) {
    Json row = Json::array();
    for (const Rat& p : dist) row.push_back(rat_to_string(p));
    outcome.push_back(row);
  }
  j["outcome"] = outcome;
  Json covariate = Json::array();
  for (const Rat& p : m.covariate) covariate.push_back(rat_to_string(p));
  j["covariate"] = covariate;
  return j;
}

Json bound_to_json(const BoundResult& bound) {
  Json j;
  j["lower"] = rat_to_string(bound.lower);
  j["upper"] = rat_to_string(bound.upper);
  j["argmin"] = state_to_json(bound.argmin_state);
  j["argmax"] = state_to_json(bound.argmax_state);
  return j;
}

Json independence_to_json(const IndependenceReport& report) {
  Json j;
  j["axiom"] = "independence";
  j["holds"] = report.holds;
  if (!report.holds) {
    Json witness;
    witness["alpha"] = rat_to_string(report.alpha);
    witness["value_p"] = rat_to_string(report.value_p);
    witness["value_q"] = rat_to_string(report.value_q);
    witness["value_mix_p"] = rat_to_string(report.value_mix_p);
    witness["value_mix_q"] = rat_to_string(report.value_mix_q);
    j["witness"] = witness;
  }
  return j;
}

namespace {

Json menu_names(const Menu& menu, const std::vector<std::string>& names) {
  Json out = Json::array();
  for (int i : menu) out.push_back(names[i]);
  return out;
}

}  // namespace

Json sen_to_json(const SenReport& report,
                 const std::vector<std::string>& names) {
  Json j;
  j["alpha_holds"] = report.alpha_holds;
  j["beta_holds"] = report.beta_holds;
  if (report.alpha_violation) {
    j["alpha_violation"] = {
        {"small", menu_names(report.alpha_violation->smaller, names)},
        {"big", menu_names(report.alpha_violation->larger, names)},
        {"element", names[report.alpha_violation->element]}};
  }
  if (report.beta_violation) {
    j["beta_violation"] = {
        {"small", menu_names(report.beta_violation->smaller, names)},
        {"big", menu_names(report.beta_violation->larger, names)},
        {"element", names[report.beta_violation->element]}};
  }
  return j;
}

Json relation_to_json(const RelationMatrix& matrix) {
  Json j;
  const int n = static_cast<int>(matrix.names.size());
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k) {
      const char* symbol = matrix.strictly_above(i, k)   ? ">"
                           : matrix.strictly_above(k, i) ? "<"
                                                         : "~";
      j[matrix.names[i] + "." + matrix.names[k]] = symbol;
    }
  return j;
}

Json crossing_to_json(const CrossingReport& report) {
  Json j;
  j["monotone"] = report.monotone;
  j["unique_crossing"] = report.unique_crossing;
  if (report.monotone_witness)
    j["monotone_witness"] = {rat_to_string(report.monotone_witness->first),
                             rat_to_string(report.monotone_witness->second)};
  if (report.crossing_witness)
    j["crossing_witness"] = rat_to_string(*report.crossing_witness);
  return j;
}

Json equivalence_to_json(const EquivalenceReport& report) {
  Json j;
  j["points"] = report.points;
  j["mismatches"] = report.mismatches;
  j["indeterminate"] = report.indeterminate;
  if (report.first_mismatch)
    j["first_mismatch"] = {rat_to_string(report.first_mismatch->first),
                           rat_to_string(report.first_mismatch->second)};
  return j;
}

Json contrast_to_json(const ContrastForm& form, const Rat& tabulate_step) {
  Json j;
  j["kind"] = form.kind();
  j["interval"] = {rat_to_string(form.interval.lo),
                   rat_to_string(form.interval.hi)};
  if (const auto* sf = std::get_if<SignForm>(&form.form)) {
    j["coefficients"] = {rat_to_string(sf->when_greater),
                         rat_to_string(sf->when_less),
                         rat_to_string(sf->when_equal)};
  } else if (const auto* bf = std::get_if<BilinearForm>(&form.form)) {
    j["coefficients"] = {rat_to_string(bf->constant), rat_to_string(bf->p0_coef),
                         rat_to_string(bf->p1_coef),
                         rat_to_string(bf->cross_coef)};
  } else {
    Json grid = Json::array();
    for (Rat p0 = form.interval.lo; p0 <= form.interval.hi;
         p0 += tabulate_step) {
      Json row = Json::array();
      for (Rat p1 = form.interval.lo; p1 <= form.interval.hi;
           p1 += tabulate_step)
        row.push_back(rat_to_string(form.eval(p0, p1)));
      grid.push_back(row);
    }
    j["grid"] = grid;
    j["step"] = rat_to_string(tabulate_step);
  }
  return j;
}

Json phi_to_json(const PhiPair& phi, const Rat& tabulate_step) {
  Json j;
  j["kind"] = phi.kind;
  j["interval"] = {rat_to_string(phi.interval.lo), rat_to_string(phi.interval.hi)};
  j["sentinels"] = {rat_to_string(phi.lo_sentinel), rat_to_string(phi.hi_sentinel)};
  if (sgn(phi.root_tolerance) > 0)
    j["root_tolerance"] = rat_to_string(phi.root_tolerance);
  Json values = Json::array();
  for (Rat p0 = phi.interval.lo; p0 <= phi.interval.hi; p0 += tabulate_step)
    values.push_back({{"p0", rat_to_string(p0)},
                      {"phi0", rat_to_string(phi.phi0(p0))}});
  j["phi0"] = values;
  return j;
}

}  // namespace cfdt
