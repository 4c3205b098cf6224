#include "cfdt/space.hpp"

#include <set>
#include <stdexcept>

namespace cfdt {

OutcomeSpace::OutcomeSpace(std::vector<std::string> labels_in,
                           std::vector<Rat> values_in)
    : labels(std::move(labels_in)), values(std::move(values_in)) {
  if (labels.size() < 2)
    throw std::invalid_argument("outcome space needs at least two labels");
  if (labels.size() != values.size())
    throw std::invalid_argument("outcome labels/values size mismatch");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size())
    throw std::invalid_argument("outcome labels must be distinct");
}

OutcomeSpace OutcomeSpace::numeric(const std::vector<Rat>& values_in) {
  std::vector<std::string> labels_in;
  labels_in.reserve(values_in.size());
  for (const Rat& v : values_in) labels_in.push_back(rat_to_string(v));
  return OutcomeSpace(std::move(labels_in), values_in);
}

OutcomeSpace OutcomeSpace::binary() {
  return OutcomeSpace({"0", "1"}, {Rat(0), Rat(1)});
}

int OutcomeSpace::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (labels[i] == label) return i;
  throw std::invalid_argument("unknown outcome label: " + label);
}

ProblemSpace::ProblemSpace(int decisions_in, OutcomeSpace outcomes_in,
                           std::vector<std::string> covariates_in)
    : decisions(decisions_in),
      outcomes(std::move(outcomes_in)),
      covariates(std::move(covariates_in)) {
  if (decisions < 2) throw std::invalid_argument("need at least two decisions");
  if (covariates.empty())
    throw std::invalid_argument("covariate space must be nonempty");
  std::set<std::string> seen(covariates.begin(), covariates.end());
  if (seen.size() != covariates.size())
    throw std::invalid_argument("covariate labels must be distinct");
  outcome_vector_count();  // size guard
}

long ProblemSpace::outcome_vector_count() const {
  return checked_pow(outcomes.size(), decisions, 1L << 40);
}

long ProblemSpace::yvec_index(std::span<const int> yvec) const {
  if (static_cast<int>(yvec.size()) != decisions)
    throw std::invalid_argument("outcome vector has wrong length");
  long index = 0;
  for (int v : yvec) {
    if (v < 0 || v >= outcomes.size())
      throw std::invalid_argument("outcome index out of range");
    index = index * outcomes.size() + v;
  }
  return index;
}

std::vector<int> ProblemSpace::yvec_at(long index) const {
  std::vector<int> yvec(decisions);
  for (int k = decisions - 1; k >= 0; --k) {
    yvec[k] = static_cast<int>(index % outcomes.size());
    index /= outcomes.size();
  }
  return yvec;
}

int ProblemSpace::covariate_index(const std::string& label) const {
  for (int i = 0; i < num_covariates(); ++i)
    if (covariates[i] == label) return i;
  throw std::invalid_argument("unknown covariate label: " + label);
}

void require_same_space(const ProblemSpace& a, const ProblemSpace& b,
                        const char* where) {
  if (!(a == b))
    throw std::invalid_argument(std::string("space mismatch in ") + where);
}

}  // namespace cfdt
