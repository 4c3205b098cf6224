#ifndef CFDT_SPACE_HPP
#define CFDT_SPACE_HPP

#include <span>
#include <string>
#include <vector>

#include "cfdt/rational.hpp"

namespace cfdt {

// Finite outcome space: ordered labels plus an exact numeric value per label
// (used when utilities reference outcome magnitudes, e.g. monetary amounts).
struct OutcomeSpace {
  std::vector<std::string> labels;
  std::vector<Rat> values;

  OutcomeSpace(std::vector<std::string> labels_in, std::vector<Rat> values_in);

  // Labels and values both equal to 0..n-1 rendered in decimal.
  static OutcomeSpace numeric(const std::vector<Rat>& values_in);
  // {"0","1"} with values 0 and 1.
  static OutcomeSpace binary();

  int size() const { return static_cast<int>(labels.size()); }
  int index_of(const std::string& label) const;

  bool operator==(const OutcomeSpace&) const = default;
};

// Decision count, outcome space, and covariate labels. Covariates default to
// a singleton space.
struct ProblemSpace {
  int decisions = 0;
  OutcomeSpace outcomes;
  std::vector<std::string> covariates;

  ProblemSpace(int decisions_in, OutcomeSpace outcomes_in,
               std::vector<std::string> covariates_in = {"*"});

  int num_decisions() const { return decisions; }
  int num_outcomes() const { return outcomes.size(); }
  int num_covariates() const { return static_cast<int>(covariates.size()); }

  // Number of outcome vectors |Y|^K. Guarded against overflow.
  long outcome_vector_count() const;

  // Lexicographic index of an outcome vector, coordinate 0 most significant.
  long yvec_index(std::span<const int> yvec) const;
  std::vector<int> yvec_at(long index) const;

  int covariate_index(const std::string& label) const;

  bool operator==(const ProblemSpace&) const = default;
};

// Throws std::invalid_argument unless the two spaces are identical.
void require_same_space(const ProblemSpace& a, const ProblemSpace& b,
                        const char* where);

}  // namespace cfdt

#endif
