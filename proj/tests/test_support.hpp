#ifndef CFDT_TEST_SUPPORT_HPP
#define CFDT_TEST_SUPPORT_HPP

#include <numeric>
#include <random>

#include "cfdt/identification.hpp"
#include "cfdt/model.hpp"

// Generators and brute-force oracles shared across the suites. Everything is
// deterministic under a caller-provided engine.
namespace cfdt::testing {

inline Rat random_rat(std::mt19937& rng, int lo = -4, int hi = 4,
                      int max_den = 4) {
  std::uniform_int_distribution<int> num(lo, hi);
  std::uniform_int_distribution<int> den(1, max_den);
  return make_rat(num(rng), den(rng));
}

// Exact distribution over n atoms from small integer weights.
inline std::vector<Rat> random_distribution(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> weight(0, 6);
  std::vector<int> weights(n);
  int total = 0;
  while (total == 0) {
    for (int& w : weights) w = weight(rng);
    total = std::accumulate(weights.begin(), weights.end(), 0);
  }
  std::vector<Rat> probs;
  probs.reserve(n);
  for (int w : weights) probs.push_back(make_rat(w, total));
  return probs;
}

inline State random_state(std::mt19937& rng, const ProblemSpace& space) {
  std::vector<Rat> mass = random_distribution(
      rng, static_cast<int>(space.outcome_vector_count()) *
               space.num_covariates());
  return State(space, std::move(mass));
}

inline UtilityTable random_utility(std::mt19937& rng,
                                   const ProblemSpace& space) {
  UtilityTable table = UtilityTable::zero(space);
  for (Rat& v : table.value) v = random_rat(rng);
  return table;
}

inline Policy random_policy(std::mt19937& rng, const ProblemSpace& space) {
  std::uniform_int_distribution<int> kind(0, 2);
  switch (kind(rng)) {
    case 0: {
      std::uniform_int_distribution<int> pick(0, space.num_decisions() - 1);
      return Policy::dirac(space, pick(rng));
    }
    case 1: {
      std::vector<std::vector<Rat>> per_x;
      for (int x = 0; x < space.num_covariates(); ++x)
        per_x.push_back(random_distribution(rng, space.num_decisions()));
      return Policy::covariate_map(space, per_x);
    }
    default: {
      std::vector<Rat> table;
      for (long yi = 0; yi < space.outcome_vector_count(); ++yi)
        for (int x = 0; x < space.num_covariates(); ++x) {
          std::vector<Rat> dist = random_distribution(rng, space.num_decisions());
          table.insert(table.end(), dist.begin(), dist.end());
        }
      return Policy::oracle_map(space, std::move(table));
    }
  }
}

inline Law random_law(std::mt19937& rng, const ProblemSpace& space) {
  return induced_law(random_policy(rng, space), random_state(rng, space));
}

// Additive table assembled from random per-coordinate components; the
// generator is its own oracle.
inline UtilityTable random_additive_utility(std::mt19937& rng,
                                            const ProblemSpace& space) {
  const int K = space.num_decisions();
  const int M = space.num_outcomes();
  const int X = space.num_covariates();
  std::vector<std::vector<Rat>> components(
      K, std::vector<Rat>(static_cast<std::size_t>(K) * M * X));
  for (auto& component : components)
    for (Rat& v : component) v = random_rat(rng);
  return UtilityTable::from_function(
      space, [&](int d, std::span<const int> yvec, int x) {
        Rat total(0);
        for (int k = 0; k < K; ++k)
          total += components[k][(static_cast<std::size_t>(d) * M + yvec[k]) *
                                     X +
                                 x];
        return total;
      });
}

// ---------------------------------------------------------------------------
// brute-force vertex enumeration over the coupling polytope (independent
// oracle for the simplex-based bounds; exponential, tiny inputs only)

// Solves square A x = b exactly; returns false when A is singular.
inline bool solve_square(std::vector<std::vector<Rat>> a, std::vector<Rat> b,
                         std::vector<Rat>& out) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int row = col; row < n; ++row)
      if (sgn(a[row][col]) != 0) {
        pivot = row;
        break;
      }
    if (pivot < 0) return false;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    Rat lead = a[col][col];
    for (int j = col; j < n; ++j) a[col][j] /= lead;
    b[col] /= lead;
    for (int row = 0; row < n; ++row) {
      if (row == col || sgn(a[row][col]) == 0) continue;
      Rat factor = a[row][col];
      for (int j = col; j < n; ++j) a[row][j] -= factor * a[col][j];
      b[row] -= factor * b[col];
    }
  }
  out = std::move(b);
  return true;
}

// All vertices of {P >= 0 : coupling has the spec'd marginals}, by
// enumerating column bases of an independent row subset.
inline std::vector<std::vector<Rat>> coupling_vertices(
    const MarginalsSpec& spec) {
  const ProblemSpace& space = spec.space;
  const int K = space.num_decisions();
  const int M = space.num_outcomes();
  const long n = space.outcome_vector_count();

  // full constraint matrix
  std::vector<std::vector<Rat>> rows(static_cast<std::size_t>(K) * M,
                                     std::vector<Rat>(n, Rat(0)));
  std::vector<Rat> rhs(static_cast<std::size_t>(K) * M);
  for (long yi = 0; yi < n; ++yi) {
    std::vector<int> yvec = space.yvec_at(yi);
    for (int k = 0; k < K; ++k) rows[k * M + yvec[k]][yi] = Rat(1);
  }
  for (int k = 0; k < K; ++k)
    for (int v = 0; v < M; ++v) rhs[k * M + v] = spec.marginals[k][v];

  // drop one redundant row per decision beyond the first
  std::vector<int> keep;
  for (int k = 0; k < K; ++k)
    for (int v = 0; v < M; ++v)
      if (k == 0 || v > 0) keep.push_back(k * M + v);
  const int rank = static_cast<int>(keep.size());

  std::vector<std::vector<Rat>> vertices;
  std::vector<int> columns(rank);
  // enumerate all column subsets of size `rank`
  std::vector<int> choice(rank);
  std::function<void(int, int)> recurse = [&](int position, int start) {
    if (position == rank) {
      std::vector<std::vector<Rat>> a(rank, std::vector<Rat>(rank));
      std::vector<Rat> b(rank);
      for (int r = 0; r < rank; ++r) {
        b[r] = rhs[keep[r]];
        for (int c = 0; c < rank; ++c) a[r][c] = rows[keep[r]][choice[c]];
      }
      std::vector<Rat> basic;
      if (!solve_square(std::move(a), std::move(b), basic)) return;
      for (const Rat& v : basic)
        if (sgn(v) < 0) return;
      std::vector<Rat> full(n, Rat(0));
      for (int c = 0; c < rank; ++c) full[choice[c]] = basic[c];
      // verify the dropped redundant rows as well
      for (int k = 0; k < K; ++k)
        for (int v = 0; v < M; ++v) {
          Rat total(0);
          for (long yi = 0; yi < n; ++yi)
            if (sgn(rows[k * M + v][yi]) != 0) total += full[yi];
          if (total != rhs[k * M + v]) return;
        }
      vertices.push_back(std::move(full));
      return;
    }
    for (int c = start; c <= n - (rank - position); ++c) {
      choice[position] = c;
      recurse(position + 1, c + 1);
    }
  };
  recurse(0, 0);
  return vertices;
}

// min/max of sum_y utility(d; y, x) * P(y) over all polytope vertices.
inline std::pair<Rat, Rat> vertex_bounds(const MarginalsSpec& spec, int d,
                                         const UtilityTable& utility) {
  std::vector<std::vector<Rat>> vertices = coupling_vertices(spec);
  bool first = true;
  Rat lo, hi;
  for (const auto& vertex : vertices) {
    Rat value(0);
    for (long yi = 0; yi < spec.space.outcome_vector_count(); ++yi)
      value += utility.at(d, yi, spec.covariate) * vertex[yi];
    if (first || value < lo) lo = value;
    if (first || value > hi) hi = value;
    first = false;
  }
  return {lo, hi};
}

}  // namespace cfdt::testing

#endif
