#include "cfdt/reduction.hpp"

#include <stdexcept>

namespace cfdt {

namespace {

std::size_t standard_index(const ProblemSpace& space, int d, int y, int x) {
  return (static_cast<std::size_t>(d) * space.num_outcomes() + y) *
             space.num_covariates() +
         x;
}

}  // namespace

const Rat& AdditiveDecomposition::component(int k, int d, int y, int x) const {
  return components[k][standard_index(space, d, y, x)];
}

Rat AdditiveDecomposition::reconstruct(int d, std::span<const int> yvec,
                                       int x) const {
  Rat total(0);
  for (int k = 0; k < space.num_decisions(); ++k)
    total += component(k, d, yvec[k], x);
  return total;
}

AdditiveDecomposition additive_decompose(const UtilityTable& utility,
                                         std::span<const int> baseline) {
  const ProblemSpace& space = utility.space;
  const int K = space.num_decisions();
  const int M = space.num_outcomes();
  const int X = space.num_covariates();
  if (static_cast<int>(baseline.size()) != K)
    throw std::invalid_argument("baseline vector has wrong length");
  const long baseline_index = space.yvec_index(baseline);

  AdditiveDecomposition out{space, {}, Rat(0), std::nullopt};
  out.components.assign(
      K, std::vector<Rat>(static_cast<std::size_t>(K) * M * X, Rat(0)));

  // u_k(d; a, x) = u(d; baseline with coordinate k set to a, x)
  //               - (K-1)/K * u(d; baseline, x)
  // so that the components sum to the table exactly at the baseline.
  const Rat fraction = make_rat(K - 1, K);
  for (int d = 0; d < K; ++d)
    for (int x = 0; x < X; ++x) {
      Rat base_value = utility.at(d, baseline_index, x);
      Rat shared_part = fraction * base_value;
      for (int k = 0; k < K; ++k) {
        std::vector<int> probe(baseline.begin(), baseline.end());
        for (int a = 0; a < M; ++a) {
          probe[k] = a;
          out.components[k][standard_index(space, d, a, x)] =
              utility.at(d, space.yvec_index(probe), x) - shared_part;
        }
      }
    }

  const long ycount = space.outcome_vector_count();
  for (int d = 0; d < K; ++d)
    for (long yi = 0; yi < ycount; ++yi) {
      std::vector<int> yvec = space.yvec_at(yi);
      for (int x = 0; x < X; ++x) {
        Rat deviation = utility.at(d, yi, x) - out.reconstruct(d, yvec, x);
        Rat magnitude = abs(deviation);
        if (magnitude > out.residual) {
          out.residual = magnitude;
          out.worst_cell = Cell{d, yi, x};
        }
      }
    }
  return out;
}

AdditiveDecomposition additive_decompose(const UtilityTable& utility) {
  std::vector<int> baseline(utility.space.num_decisions(), 0);
  return additive_decompose(utility, baseline);
}

const Rat& StandardUtility::at(int d, int y, int x) const {
  return value[standard_index(space, d, y, x)];
}

Rat& StandardUtility::at(int d, int y, int x) {
  return value[standard_index(space, d, y, x)];
}

UtilityTable StandardUtility::lift() const {
  return UtilityTable::from_function(
      space, [this](int d, std::span<const int> yvec, int x) {
        return at(d, yvec[d], x);
      });
}

StandardUtility StandardUtility::zero(const ProblemSpace& space) {
  return StandardUtility{
      space, std::vector<Rat>(static_cast<std::size_t>(space.num_decisions()) *
                                  space.num_outcomes() *
                                  space.num_covariates(),
                              Rat(0))};
}

std::variant<StandardUtility, CellPairWitness> reduce_to_standard(
    const UtilityTable& utility) {
  const ProblemSpace& space = utility.space;
  const long ycount = space.outcome_vector_count();
  StandardUtility reduced = StandardUtility::zero(space);
  for (int d = 0; d < space.num_decisions(); ++d)
    for (int x = 0; x < space.num_covariates(); ++x)
      for (int v = 0; v < space.num_outcomes(); ++v) {
        bool have_reference = false;
        long reference = 0;
        for (long yi = 0; yi < ycount; ++yi) {
          if (space.yvec_at(yi)[d] != v) continue;
          if (!have_reference) {
            have_reference = true;
            reference = yi;
            reduced.at(d, v, x) = utility.at(d, yi, x);
          } else if (utility.at(d, yi, x) != utility.at(d, reference, x)) {
            return CellPairWitness{Cell{d, reference, x}, Cell{d, yi, x},
                                   utility.at(d, reference, x),
                                   utility.at(d, yi, x)};
          }
        }
      }
  return reduced;
}

UtilityTable OutcomeUtility::lift(const ProblemSpace& space) const {
  if (!(space.outcomes == outcomes))
    throw std::invalid_argument("outcome utility lifted onto a foreign space");
  return UtilityTable::from_function(
      space, [this](int d, std::span<const int> yvec, int) {
        return value[yvec[d]];
      });
}

std::variant<OutcomeUtility, CellPairWitness> reduce_to_outcome(
    const UtilityTable& utility) {
  const ProblemSpace& space = utility.space;
  const long ycount = space.outcome_vector_count();
  std::vector<Rat> per_outcome(space.num_outcomes(), Rat(0));
  std::vector<bool> seen(space.num_outcomes(), false);
  std::vector<Cell> reference(space.num_outcomes());
  for (int d = 0; d < space.num_decisions(); ++d)
    for (long yi = 0; yi < ycount; ++yi) {
      int v = space.yvec_at(yi)[d];
      for (int x = 0; x < space.num_covariates(); ++x) {
        if (!seen[v]) {
          seen[v] = true;
          reference[v] = Cell{d, yi, x};
          per_outcome[v] = utility.at(d, yi, x);
        } else if (utility.at(d, yi, x) != per_outcome[v]) {
          const Cell& ref = reference[v];
          return CellPairWitness{ref, Cell{d, yi, x},
                                 utility.at(ref.d, ref.yindex, ref.x),
                                 utility.at(d, yi, x)};
        }
      }
    }
  return OutcomeUtility{space.outcomes, std::move(per_outcome)};
}

const Rat& BinarySplit::shared(long yindex, int x) const {
  return shared_part[static_cast<std::size_t>(yindex) *
                         standard_part.space.num_covariates() +
                     x];
}

BinarySplit binary_split(const UtilityTable& utility) {
  const ProblemSpace& space = utility.space;
  if (space.num_decisions() != 2)
    throw std::invalid_argument("binary_split requires exactly two decisions");
  const int M = space.num_outcomes();
  const int X = space.num_covariates();
  const long ycount = space.outcome_vector_count();

  auto yindex = [&](int y0, int y1) {
    const int pair[] = {y0, y1};
    return space.yvec_index(pair);
  };

  BinarySplit split{StandardUtility::zero(space),
                    std::vector<Rat>(static_cast<std::size_t>(ycount) * X,
                                     Rat(0)),
                    true, std::nullopt};

  // The contrast u(1; y) - u(0; y) separates as g1(y1) - g0(y0) exactly when
  // the split exists; anchor both at the baseline (0, 0).
  for (int x = 0; x < X; ++x) {
    auto contrast = [&](int y0, int y1) {
      Rat c = utility.at(1, yindex(y0, y1), x) -
              utility.at(0, yindex(y0, y1), x);
      return c;
    };
    Rat anchor = contrast(0, 0);
    for (int y1 = 0; y1 < M; ++y1) split.standard_part.at(1, y1, x) = contrast(0, y1);
    for (int y0 = 0; y0 < M; ++y0)
      split.standard_part.at(0, y0, x) = anchor - contrast(y0, 0);

    for (int y0 = 0; y0 < M; ++y0)
      for (int y1 = 0; y1 < M; ++y1) {
        std::size_t cell = static_cast<std::size_t>(yindex(y0, y1)) * X + x;
        split.shared_part[cell] =
            utility.at(0, yindex(y0, y1), x) - split.standard_part.at(0, y0, x);
      }

    // shift the baseline value of h into the standard part
    Rat baseline_h = split.shared_part[static_cast<std::size_t>(yindex(0, 0)) *
                                           X +
                                       x];
    if (sgn(baseline_h) != 0) {
      for (int y0 = 0; y0 < M; ++y0)
        for (int y1 = 0; y1 < M; ++y1)
          split.shared_part[static_cast<std::size_t>(yindex(y0, y1)) * X + x] -=
              baseline_h;
      for (int d = 0; d < 2; ++d)
        for (int y = 0; y < M; ++y) split.standard_part.at(d, y, x) += baseline_h;
    }
  }

  for (int d = 0; d < 2 && split.exact; ++d)
    for (long yi = 0; yi < ycount && split.exact; ++yi) {
      std::vector<int> yvec = space.yvec_at(yi);
      for (int x = 0; x < X; ++x) {
        Rat rebuilt = split.standard_part.at(d, yvec[d], x) +
                      split.shared_part[static_cast<std::size_t>(yi) * X + x];
        if (rebuilt != utility.at(d, yi, x)) {
          split.exact = false;
          split.failure_cell = Cell{d, yi, x};
          break;
        }
      }
    }
  return split;
}

}  // namespace cfdt
