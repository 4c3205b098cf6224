#ifndef CFDT_EXTENDED_HPP
#define CFDT_EXTENDED_HPP

#include <array>
#include <optional>
#include <variant>

#include "cfdt/axioms.hpp"

namespace cfdt {

struct Interval {
  Rat lo;
  Rat hi;
};

// Step contrast driven by the order of the means:
// when_greater on {p0 > p1}, when_less on {p0 < p1}, when_equal on the tie.
struct SignForm {
  Rat when_greater;
  Rat when_less;
  Rat when_equal;
};

// constant + p0_coef * p0 + p1_coef * p1 + cross_coef * p0 * p1.
struct BilinearForm {
  Rat constant;
  Rat p0_coef;
  Rat p1_coef;
  Rat cross_coef;
};

// Black-box contrast sampled on a rational grid of the given step.
struct GridEvalForm {
  Rat step;
  std::function<Rat(const Rat&, const Rat&)> eval;
};

// Closed-form or tabulated representation of a binary-decision contrast on
// mean space: the difference between the extended values of d = 1 and d = 0.
struct ContrastForm {
  Interval interval;
  std::variant<SignForm, BilinearForm, GridEvalForm> form;

  Rat eval(const Rat& p0, const Rat& p1) const;
  const char* kind() const;
};

// Per-decision mean of the outcome values.
std::vector<Rat> mean_vector(const State& state);
std::vector<Rat> mean_vector(const Law& law);

// A pair of per-decision extensions of a binary-outcome table to mean space.
struct ExtendedUtility {
  enum class Kind { Asymmetric, Product };
  Kind kind;
  Interval interval;
  std::variant<std::array<SignForm, 2>, std::array<BilinearForm, 2>> parts;

  Rat eval(int d, const Rat& p0, const Rat& p1) const;
  ContrastForm contrast() const;

  // Evaluates decision-degenerate laws by their mean vector. Throws when the
  // law randomizes over decisions.
  ValueFunctional value_functional() const;
};

// Indicator-basis extension: requires each decision's table to coincide on
// the two tie cells (0,0) and (1,1); throws otherwise, reporting the
// residual. Binary outcomes with values {0, 1} only.
ExtendedUtility asymmetric_extension(const UtilityTable& utility);

// Multilinear (independent-coupling) extension of the exact table. Binary
// outcomes with values {0, 1} only.
ExtendedUtility product_extension(const UtilityTable& utility);

// Verification of the bounded-means / monotonicity / unique-crossing
// assumptions. Exact coefficient analysis for closed forms, grid comparison
// otherwise.
struct CrossingReport {
  bool monotone = true;
  bool unique_crossing = true;
  std::optional<std::pair<Rat, Rat>> monotone_witness;  // violating point
  std::optional<Rat> crossing_witness;                  // violating p0 slice

  bool passed() const { return monotone && unique_crossing; }
};

CrossingReport check_crossing_assumptions(const ContrastForm& form,
                                          const Rat& grid_step);

// Monotone replication of a contrast's recommendations by per-decision score
// functions: phi1 is the identity, phi0 maps p0 to the crossing root, or to
// the sentinels lo - 1 / hi + 1 when the slice never changes sign.
struct PhiPair {
  Interval interval;
  Rat lo_sentinel;
  Rat hi_sentinel;
  Rat root_tolerance;  // 0 for closed forms
  std::string kind;
  std::function<Rat(const Rat&)> phi0_fn;

  Rat phi0(const Rat& p0) const { return phi0_fn(p0); }
  static Rat phi1(const Rat& p1) { return p1; }
};

// Throws unless check_crossing_assumptions passes for the form.
PhiPair build_phi(const ContrastForm& form);

struct EquivalenceReport {
  long points = 0;
  long mismatches = 0;
  long indeterminate = 0;  // grid roots closer than the root tolerance
  std::optional<std::pair<Rat, Rat>> first_mismatch;

  bool ok() const { return mismatches == 0; }
};

// Sweeps the grid and asserts sign(contrast) == sign(phi1(p1) - phi0(p0)).
EquivalenceReport check_equivalence(const ContrastForm& form,
                                    const PhiPair& phi, const Rat& grid_step);

// +1 recommends d = 1, -1 recommends d = 0, 0 is a tie.
int recommend(const ContrastForm& form, const Rat& p0, const Rat& p1);
int recommend(const ContrastForm& form, const State& state);

// Evaluates both extension families of one table at a mean vector; the two
// can disagree in sign.
struct AmbiguityDemo {
  Rat asymmetric_value;
  Rat product_value;
  int asymmetric_recommendation;
  int product_recommendation;
  bool opposite;
};

AmbiguityDemo extension_ambiguity_demo(const UtilityTable& utility,
                                       const Rat& p0, const Rat& p1);

}  // namespace cfdt

#endif
