#include "cfdt/model.hpp"

#include <stdexcept>

namespace cfdt {

namespace {

void check_distribution(const std::vector<Rat>& mass, const char* what) {
  Rat total(0);
  for (const Rat& m : mass) {
    if (sgn(m) < 0)
      throw std::invalid_argument(std::string(what) + ": negative mass");
    total += m;
  }
  if (total != 1)
    throw std::invalid_argument(std::string(what) +
                                ": masses must sum to exactly 1, got " +
                                rat_to_string(total));
}

}  // namespace

State::State(ProblemSpace space_in, std::vector<Rat> mass_in)
    : space(std::move(space_in)), mass(std::move(mass_in)) {
  const std::size_t cells =
      static_cast<std::size_t>(space.outcome_vector_count()) *
      space.num_covariates();
  if (mass.size() != cells)
    throw std::invalid_argument("state mass vector has wrong size");
  check_distribution(mass, "state");
}

const Rat& State::at(long yindex, int x) const {
  return mass[static_cast<std::size_t>(yindex) * space.num_covariates() + x];
}

Rat& State::at(long yindex, int x) {
  return mass[static_cast<std::size_t>(yindex) * space.num_covariates() + x];
}

State State::from_cells(
    const ProblemSpace& space,
    const std::vector<std::tuple<std::vector<int>, int, Rat>>& cells) {
  std::vector<Rat> mass(
      static_cast<std::size_t>(space.outcome_vector_count()) *
          space.num_covariates(),
      Rat(0));
  for (const auto& [yvec, x, prob] : cells) {
    if (x < 0 || x >= space.num_covariates())
      throw std::invalid_argument("covariate index out of range");
    mass[static_cast<std::size_t>(space.yvec_index(yvec)) *
             space.num_covariates() +
         x] += prob;
  }
  return State(space, std::move(mass));
}

State dirac_state(const ProblemSpace& space, std::span<const int> yvec,
                  int x) {
  return State::from_cells(
      space, {{std::vector<int>(yvec.begin(), yvec.end()), x, Rat(1)}});
}

State independent_coupling(const ProblemSpace& space,
                           const std::vector<std::vector<Rat>>& marginals,
                           int x) {
  if (static_cast<int>(marginals.size()) != space.num_decisions())
    throw std::invalid_argument("need one marginal per decision");
  for (const auto& m : marginals) {
    if (static_cast<int>(m.size()) != space.num_outcomes())
      throw std::invalid_argument("marginal has wrong support size");
    check_distribution(m, "marginal");
  }
  if (x < 0 || x >= space.num_covariates())
    throw std::invalid_argument("covariate index out of range");
  const long ycount = space.outcome_vector_count();
  std::vector<Rat> mass(static_cast<std::size_t>(ycount) *
                            space.num_covariates(),
                        Rat(0));
  for (long yi = 0; yi < ycount; ++yi) {
    std::vector<int> yvec = space.yvec_at(yi);
    Rat product(1);
    for (int k = 0; k < space.num_decisions(); ++k)
      product *= marginals[k][yvec[k]];
    mass[static_cast<std::size_t>(yi) * space.num_covariates() + x] = product;
  }
  return State(space, std::move(mass));
}

Policy Policy::dirac(const ProblemSpace& space, int decision) {
  if (decision < 0 || decision >= space.num_decisions())
    throw std::invalid_argument("dirac decision out of range");
  Policy p(space, PolicyKind::Dirac);
  p.dirac_decision = decision;
  return p;
}

Policy Policy::covariate_map(const ProblemSpace& space,
                             const std::vector<std::vector<Rat>>& per_x) {
  if (static_cast<int>(per_x.size()) != space.num_covariates())
    throw std::invalid_argument("need one decision distribution per covariate");
  Policy p(space, PolicyKind::CovariateMap);
  p.table.reserve(per_x.size() * space.num_decisions());
  for (const auto& dist : per_x) {
    if (static_cast<int>(dist.size()) != space.num_decisions())
      throw std::invalid_argument("decision distribution has wrong size");
    check_distribution(dist, "policy");
    p.table.insert(p.table.end(), dist.begin(), dist.end());
  }
  return p;
}

Policy Policy::oracle_map(const ProblemSpace& space,
                          std::vector<Rat> full_table) {
  const std::size_t rows =
      static_cast<std::size_t>(space.outcome_vector_count()) *
      space.num_covariates();
  if (full_table.size() != rows * space.num_decisions())
    throw std::invalid_argument("oracle policy table has wrong size");
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<Rat> dist(full_table.begin() + r * space.num_decisions(),
                          full_table.begin() + (r + 1) * space.num_decisions());
    check_distribution(dist, "policy");
  }
  Policy p(space, PolicyKind::OracleMap);
  p.table = std::move(full_table);
  return p;
}

Policy Policy::uniform(const ProblemSpace& space) {
  std::vector<std::vector<Rat>> per_x(
      space.num_covariates(),
      std::vector<Rat>(space.num_decisions(),
                       make_rat(1, space.num_decisions())));
  return covariate_map(space, per_x);
}

Rat Policy::prob(int d, long yindex, int x) const {
  switch (kind) {
    case PolicyKind::Dirac:
      return d == dirac_decision ? Rat(1) : Rat(0);
    case PolicyKind::CovariateMap:
      return table[static_cast<std::size_t>(x) * space.num_decisions() + d];
    case PolicyKind::OracleMap:
      return table[(static_cast<std::size_t>(yindex) * space.num_covariates() +
                    x) *
                       space.num_decisions() +
                   d];
  }
  throw std::logic_error("unreachable policy kind");
}

Law::Law(ProblemSpace space_in, std::vector<Rat> mass_in)
    : space(std::move(space_in)), mass(std::move(mass_in)) {
  const std::size_t cells =
      static_cast<std::size_t>(space.num_decisions()) *
      space.outcome_vector_count() * space.num_covariates();
  if (mass.size() != cells)
    throw std::invalid_argument("law mass vector has wrong size");
  check_distribution(mass, "law");
}

const Rat& Law::at(int d, long yindex, int x) const {
  return mass[(static_cast<std::size_t>(d) * space.outcome_vector_count() +
               yindex) *
                  space.num_covariates() +
              x];
}

Rat& Law::at(int d, long yindex, int x) {
  return mass[(static_cast<std::size_t>(d) * space.outcome_vector_count() +
               yindex) *
                  space.num_covariates() +
              x];
}

UtilityTable::UtilityTable(ProblemSpace space_in, std::vector<Rat> value_in)
    : space(std::move(space_in)), value(std::move(value_in)) {
  const std::size_t cells =
      static_cast<std::size_t>(space.num_decisions()) *
      space.outcome_vector_count() * space.num_covariates();
  if (value.size() != cells)
    throw std::invalid_argument("utility table has wrong size");
}

const Rat& UtilityTable::at(int d, long yindex, int x) const {
  return value[(static_cast<std::size_t>(d) * space.outcome_vector_count() +
                yindex) *
                   space.num_covariates() +
               x];
}

Rat& UtilityTable::at(int d, long yindex, int x) {
  return value[(static_cast<std::size_t>(d) * space.outcome_vector_count() +
                yindex) *
                   space.num_covariates() +
               x];
}

UtilityTable UtilityTable::from_function(
    const ProblemSpace& space,
    const std::function<Rat(int d, std::span<const int> yvec, int x)>& fn) {
  UtilityTable table = zero(space);
  const long ycount = space.outcome_vector_count();
  for (int d = 0; d < space.num_decisions(); ++d)
    for (long yi = 0; yi < ycount; ++yi) {
      std::vector<int> yvec = space.yvec_at(yi);
      for (int x = 0; x < space.num_covariates(); ++x)
        table.at(d, yi, x) = fn(d, yvec, x);
    }
  return table;
}

UtilityTable UtilityTable::zero(const ProblemSpace& space) {
  std::vector<Rat> value(static_cast<std::size_t>(space.num_decisions()) *
                             space.outcome_vector_count() *
                             space.num_covariates(),
                         Rat(0));
  return UtilityTable(space, std::move(value));
}

Law induced_law(const Policy& policy, const State& state) {
  require_same_space(policy.space, state.space, "induced_law");
  const ProblemSpace& space = state.space;
  const long ycount = space.outcome_vector_count();
  std::vector<Rat> cells(static_cast<std::size_t>(space.num_decisions()) *
                             ycount * space.num_covariates(),
                         Rat(0));
  for (int d = 0; d < space.num_decisions(); ++d)
    for (long yi = 0; yi < ycount; ++yi)
      for (int x = 0; x < space.num_covariates(); ++x) {
        Rat cell = policy.prob(d, yi, x) * state.at(yi, x);
        cells[(static_cast<std::size_t>(d) * ycount + yi) *
                  space.num_covariates() +
              x] = cell;
      }
  return Law(space, std::move(cells));
}

Law mix(std::span<const Law> laws, std::span<const Rat> weights) {
  if (laws.empty() || laws.size() != weights.size())
    throw std::invalid_argument("mix needs matching laws and weights");
  Rat total(0);
  for (const Rat& w : weights) {
    if (sgn(w) < 0) throw std::invalid_argument("mix weights must be >= 0");
    total += w;
  }
  if (total != 1)
    throw std::invalid_argument("mix weights must sum to exactly 1");
  const ProblemSpace& space = laws[0].space;
  for (const Law& law : laws) require_same_space(space, law.space, "mix");
  std::vector<Rat> cells(laws[0].mass.size(), Rat(0));
  for (std::size_t i = 0; i < laws.size(); ++i)
    for (std::size_t c = 0; c < cells.size(); ++c)
      cells[c] += weights[i] * laws[i].mass[c];
  return Law(space, std::move(cells));
}

Law mix2(const Law& a, const Law& b, const Rat& weight_a) {
  const Law laws[] = {a, b};
  Rat complement = Rat(1) - weight_a;
  const Rat weights[] = {weight_a, complement};
  return mix(laws, weights);
}

namespace {

Marginals empty_marginals(const ProblemSpace& space) {
  Marginals m;
  m.outcome.assign(space.num_decisions(),
                   std::vector<Rat>(space.num_outcomes(), Rat(0)));
  m.covariate.assign(space.num_covariates(), Rat(0));
  return m;
}

}  // namespace

Marginals marginals(const State& state) {
  const ProblemSpace& space = state.space;
  Marginals m = empty_marginals(space);
  const long ycount = space.outcome_vector_count();
  for (long yi = 0; yi < ycount; ++yi) {
    std::vector<int> yvec = space.yvec_at(yi);
    for (int x = 0; x < space.num_covariates(); ++x) {
      const Rat& cell = state.at(yi, x);
      if (sgn(cell) == 0) continue;
      for (int k = 0; k < space.num_decisions(); ++k)
        m.outcome[k][yvec[k]] += cell;
      m.covariate[x] += cell;
    }
  }
  return m;
}

Marginals marginals(const Law& law) {
  const ProblemSpace& space = law.space;
  Marginals m = empty_marginals(space);
  const long ycount = space.outcome_vector_count();
  for (int d = 0; d < space.num_decisions(); ++d)
    for (long yi = 0; yi < ycount; ++yi) {
      std::vector<int> yvec = space.yvec_at(yi);
      for (int x = 0; x < space.num_covariates(); ++x) {
        const Rat& cell = law.at(d, yi, x);
        if (sgn(cell) == 0) continue;
        for (int k = 0; k < space.num_decisions(); ++k)
          m.outcome[k][yvec[k]] += cell;
        m.covariate[x] += cell;
      }
    }
  return m;
}

std::vector<Rat> decision_marginal(const Law& law) {
  const ProblemSpace& space = law.space;
  std::vector<Rat> dm(space.num_decisions(), Rat(0));
  const long ycount = space.outcome_vector_count();
  for (int d = 0; d < space.num_decisions(); ++d)
    for (long yi = 0; yi < ycount; ++yi)
      for (int x = 0; x < space.num_covariates(); ++x)
        dm[d] += law.at(d, yi, x);
  return dm;
}

}  // namespace cfdt
