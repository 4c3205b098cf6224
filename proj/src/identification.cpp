#include "cfdt/identification.hpp"

#include <cstdlib>
#include <stdexcept>

#include "cfdt/exact_lp.hpp"

namespace cfdt {

long lp_variable_cap() {
  if (const char* env = std::getenv("CFDT_LP_VAR_CAP")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end && *end == '\0' && cap > 0) return cap;
    throw std::invalid_argument("CFDT_LP_VAR_CAP must be a positive integer");
  }
  return 1'000'000;
}

MarginalsSpec MarginalsSpec::from_state(const State& state) {
  Marginals m = cfdt::marginals(state);
  int point = -1;
  for (int x = 0; x < state.space.num_covariates(); ++x)
    if (sgn(m.covariate[x]) != 0) {
      if (point >= 0)
        throw std::invalid_argument(
            "marginals spec needs a covariate-degenerate state");
      point = x;
    }
  return MarginalsSpec{state.space, std::move(m.outcome), point};
}

namespace {

void validate_spec(const MarginalsSpec& spec) {
  if (static_cast<int>(spec.marginals.size()) != spec.space.num_decisions())
    throw std::invalid_argument("need one marginal per decision");
  for (const auto& m : spec.marginals) {
    if (static_cast<int>(m.size()) != spec.space.num_outcomes())
      throw std::invalid_argument("marginal has wrong support size");
    Rat total(0);
    for (const Rat& p : m) {
      if (sgn(p) < 0) throw std::invalid_argument("negative marginal mass");
      total += p;
    }
    if (total != 1)
      throw std::invalid_argument("marginal must sum to exactly 1");
  }
  if (spec.covariate < 0 || spec.covariate >= spec.space.num_covariates())
    throw std::invalid_argument("covariate index out of range");
  if (spec.space.outcome_vector_count() > lp_variable_cap())
    throw std::length_error("coupling polytope exceeds the LP variable cap");
}

State coupling_state(const MarginalsSpec& spec, const std::vector<Rat>& cells) {
  const ProblemSpace& space = spec.space;
  std::vector<Rat> mass(static_cast<std::size_t>(
                            space.outcome_vector_count()) *
                            space.num_covariates(),
                        Rat(0));
  for (long yi = 0; yi < space.outcome_vector_count(); ++yi)
    mass[static_cast<std::size_t>(yi) * space.num_covariates() +
         spec.covariate] = cells[yi];
  return State(space, std::move(mass));
}

}  // namespace

BoundResult sharp_bounds(const MarginalsSpec& spec, int d,
                         const UtilityTable& utility) {
  validate_spec(spec);
  require_same_space(spec.space, utility.space, "sharp_bounds");
  const ProblemSpace& space = spec.space;
  if (d < 0 || d >= space.num_decisions())
    throw std::invalid_argument("decision index out of range");

  const long ycount = space.outcome_vector_count();
  const int K = space.num_decisions();
  const int M = space.num_outcomes();

  LpProblem lp;
  lp.c.resize(ycount);
  for (long yi = 0; yi < ycount; ++yi)
    lp.c[yi] = utility.at(d, yi, spec.covariate);
  lp.A.assign(static_cast<std::size_t>(K) * M, std::vector<Rat>(ycount, Rat(0)));
  lp.b.resize(static_cast<std::size_t>(K) * M);
  for (long yi = 0; yi < ycount; ++yi) {
    std::vector<int> yvec = space.yvec_at(yi);
    for (int k = 0; k < K; ++k) lp.A[k * M + yvec[k]][yi] = Rat(1);
  }
  for (int k = 0; k < K; ++k)
    for (int v = 0; v < M; ++v) lp.b[k * M + v] = spec.marginals[k][v];

  LpSolution low = lp_minimize(lp);
  LpSolution high = lp_maximize(lp);
  return BoundResult{std::move(low.objective), std::move(high.objective),
                     coupling_state(spec, low.x), coupling_state(spec, high.x)};
}

RankingBounds bound_policy_ranking(const MarginalsSpec& spec,
                                   const UtilityTable& utility) {
  RankingBounds out;
  for (int d = 0; d < spec.space.num_decisions(); ++d)
    out.per_decision.push_back(sharp_bounds(spec, d, utility));
  for (int d = 0; d < spec.space.num_decisions(); ++d) {
    bool dominant = true;
    for (int rival = 0; rival < spec.space.num_decisions(); ++rival) {
      if (rival == d) continue;
      if (!(out.per_decision[d].lower > out.per_decision[rival].upper)) {
        dominant = false;
        break;
      }
    }
    if (dominant) out.dominant.push_back(d);
  }
  return out;
}

}  // namespace cfdt
