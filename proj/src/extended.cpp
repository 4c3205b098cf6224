#include "cfdt/extended.hpp"

#include <stdexcept>

namespace cfdt {

namespace {

Rat eval_sign_form(const SignForm& f, const Rat& p0, const Rat& p1) {
  if (p0 > p1) return f.when_greater;
  if (p0 < p1) return f.when_less;
  return f.when_equal;
}

Rat eval_bilinear(const BilinearForm& f, const Rat& p0, const Rat& p1) {
  Rat v = f.constant + f.p0_coef * p0 + f.p1_coef * p1 + f.cross_coef * p0 * p1;
  return v;
}

std::vector<Rat> grid_points(const Interval& interval, const Rat& step) {
  if (sgn(step) <= 0) throw std::invalid_argument("grid step must be positive");
  std::vector<Rat> points;
  for (Rat p = interval.lo; p < interval.hi; p += step) points.push_back(p);
  points.push_back(interval.hi);
  return points;
}

}  // namespace

Rat ContrastForm::eval(const Rat& p0, const Rat& p1) const {
  if (const auto* sf = std::get_if<SignForm>(&form))
    return eval_sign_form(*sf, p0, p1);
  if (const auto* bf = std::get_if<BilinearForm>(&form))
    return eval_bilinear(*bf, p0, p1);
  return std::get<GridEvalForm>(form).eval(p0, p1);
}

const char* ContrastForm::kind() const {
  if (std::holds_alternative<SignForm>(form)) return "sign";
  if (std::holds_alternative<BilinearForm>(form)) return "bilinear";
  return "grid";
}

std::vector<Rat> mean_vector(const State& state) {
  const ProblemSpace& space = state.space;
  std::vector<Rat> means(space.num_decisions(), Rat(0));
  for (long yi = 0; yi < space.outcome_vector_count(); ++yi) {
    std::vector<int> yvec = space.yvec_at(yi);
    for (int x = 0; x < space.num_covariates(); ++x) {
      const Rat& cell = state.at(yi, x);
      if (sgn(cell) == 0) continue;
      for (int k = 0; k < space.num_decisions(); ++k)
        means[k] += cell * space.outcomes.values[yvec[k]];
    }
  }
  return means;
}

std::vector<Rat> mean_vector(const Law& law) {
  const ProblemSpace& space = law.space;
  std::vector<Rat> means(space.num_decisions(), Rat(0));
  for (int d = 0; d < space.num_decisions(); ++d)
    for (long yi = 0; yi < space.outcome_vector_count(); ++yi) {
      std::vector<int> yvec = space.yvec_at(yi);
      for (int x = 0; x < space.num_covariates(); ++x) {
        const Rat& cell = law.at(d, yi, x);
        if (sgn(cell) == 0) continue;
        for (int k = 0; k < space.num_decisions(); ++k)
          means[k] += cell * space.outcomes.values[yvec[k]];
      }
    }
  return means;
}

Rat ExtendedUtility::eval(int d, const Rat& p0, const Rat& p1) const {
  if (d < 0 || d > 1) throw std::invalid_argument("decision must be 0 or 1");
  if (const auto* sf = std::get_if<std::array<SignForm, 2>>(&parts))
    return eval_sign_form((*sf)[d], p0, p1);
  return eval_bilinear(std::get<std::array<BilinearForm, 2>>(parts)[d], p0, p1);
}

ContrastForm ExtendedUtility::contrast() const {
  if (const auto* sf = std::get_if<std::array<SignForm, 2>>(&parts)) {
    SignForm gamma{(*sf)[1].when_greater - (*sf)[0].when_greater,
                   (*sf)[1].when_less - (*sf)[0].when_less,
                   (*sf)[1].when_equal - (*sf)[0].when_equal};
    return ContrastForm{interval, gamma};
  }
  const auto& bf = std::get<std::array<BilinearForm, 2>>(parts);
  BilinearForm gamma{bf[1].constant - bf[0].constant,
                     bf[1].p0_coef - bf[0].p0_coef,
                     bf[1].p1_coef - bf[0].p1_coef,
                     bf[1].cross_coef - bf[0].cross_coef};
  return ContrastForm{interval, gamma};
}

ValueFunctional ExtendedUtility::value_functional() const {
  return [ext = *this](const Law& law) {
    if (law.space.num_decisions() != 2)
      throw std::invalid_argument("extended evaluation needs two decisions");
    std::vector<Rat> dm = decision_marginal(law);
    int decision = -1;
    for (int d = 0; d < 2; ++d)
      if (dm[d] == 1) decision = d;
    if (decision < 0)
      throw std::invalid_argument(
          "extended evaluation covers only decision-degenerate laws");
    std::vector<Rat> means = mean_vector(law);
    return ext.eval(decision, means[0], means[1]);
  };
}

namespace {

// Validates the binary survival coding and returns the four table values of
// one decision as t[y0][y1].
std::array<std::array<Rat, 2>, 2> binary_table(const UtilityTable& utility,
                                               int d) {
  const ProblemSpace& space = utility.space;
  if (space.num_decisions() != 2)
    throw std::invalid_argument("mean-space extension needs two decisions");
  if (space.num_outcomes() != 2 || space.outcomes.values[0] != 0 ||
      space.outcomes.values[1] != 1)
    throw std::invalid_argument(
        "mean-space extension needs binary outcomes valued {0, 1}");
  if (space.num_covariates() != 1)
    throw std::invalid_argument("mean-space extension takes no covariates");
  std::array<std::array<Rat, 2>, 2> t;
  for (int y0 = 0; y0 < 2; ++y0)
    for (int y1 = 0; y1 < 2; ++y1) {
      const int pair[] = {y0, y1};
      t[y0][y1] = utility.at(d, space.yvec_index(pair), 0);
    }
  return t;
}

}  // namespace

ExtendedUtility asymmetric_extension(const UtilityTable& utility) {
  std::array<SignForm, 2> parts;
  for (int d = 0; d < 2; ++d) {
    auto t = binary_table(utility, d);
    if (t[0][0] != t[1][1])
      throw std::invalid_argument(
          "table is not expressible in pure indicator form; tie cells differ "
          "by " +
          rat_to_string(Rat(t[1][1] - t[0][0])) + " at decision " +
          std::to_string(d));
    parts[d] = SignForm{t[1][0], t[0][1], t[0][0]};
  }
  return ExtendedUtility{ExtendedUtility::Kind::Asymmetric,
                         Interval{Rat(0), Rat(1)}, parts};
}

ExtendedUtility product_extension(const UtilityTable& utility) {
  std::array<BilinearForm, 2> parts;
  for (int d = 0; d < 2; ++d) {
    auto t = binary_table(utility, d);
    parts[d] = BilinearForm{
        t[0][0], Rat(t[1][0] - t[0][0]), Rat(t[0][1] - t[0][0]),
        Rat(t[1][1] - t[1][0] - t[0][1] + t[0][0])};
  }
  return ExtendedUtility{ExtendedUtility::Kind::Product,
                         Interval{Rat(0), Rat(1)}, parts};
}

namespace {

CrossingReport check_sign_form(const SignForm& f) {
  CrossingReport report;
  const Rat& lower = f.when_greater;  // value below the diagonal
  const Rat& tie = f.when_equal;
  const Rat& upper = f.when_less;  // value above the diagonal
  if (!(lower <= tie && tie <= upper)) {
    report.monotone = false;
    report.monotone_witness = {Rat(0), Rat(0)};
  }
  // a flat zero piece gives a continuum of roots; a sign change across the
  // diagonal needs the tie value to supply the root
  if (sgn(lower) == 0 || sgn(upper) == 0) {
    report.unique_crossing = false;
    report.crossing_witness = Rat(0);
  } else if (sgn(lower) < 0 && sgn(upper) > 0 && sgn(tie) != 0) {
    report.unique_crossing = false;
    report.crossing_witness = Rat(0);
  }
  return report;
}

CrossingReport check_bilinear(const BilinearForm& f, const Interval& I) {
  CrossingReport report;
  Rat slope_lo = f.p1_coef + f.cross_coef * I.lo;
  Rat slope_hi = f.p1_coef + f.cross_coef * I.hi;
  if (sgn(slope_lo) < 0 || sgn(slope_hi) < 0) {
    report.monotone = false;
    report.monotone_witness = {sgn(slope_lo) < 0 ? I.lo : I.hi, Rat(0)};
  }
  Rat dual_lo = f.p0_coef + f.cross_coef * I.lo;
  Rat dual_hi = f.p0_coef + f.cross_coef * I.hi;
  if (sgn(dual_lo) > 0 || sgn(dual_hi) > 0) {
    report.monotone = false;
    report.monotone_witness = {Rat(0), sgn(dual_lo) > 0 ? I.lo : I.hi};
  }
  // a p1-slice has multiple roots only when it is identically zero
  auto flat_zero_slice = [&](const Rat& p0) {
    Rat slope = f.p1_coef + f.cross_coef * p0;
    Rat level = f.constant + f.p0_coef * p0;
    return sgn(slope) == 0 && sgn(level) == 0;
  };
  if (sgn(f.cross_coef) != 0) {
    Rat flat_at = -f.p1_coef / f.cross_coef;
    if (flat_at >= I.lo && flat_at <= I.hi && flat_zero_slice(flat_at)) {
      report.unique_crossing = false;
      report.crossing_witness = flat_at;
    }
  } else if (sgn(f.p1_coef) == 0) {
    // every slice is constant c + c0 * p0; any root of that line is flat zero
    if (sgn(f.p0_coef) == 0) {
      if (sgn(f.constant) == 0) {
        report.unique_crossing = false;
        report.crossing_witness = I.lo;
      }
    } else {
      Rat root = -f.constant / f.p0_coef;
      if (root >= I.lo && root <= I.hi) {
        report.unique_crossing = false;
        report.crossing_witness = root;
      }
    }
  }
  return report;
}

CrossingReport check_grid(const GridEvalForm& f, const Interval& I,
                          const Rat& step) {
  CrossingReport report;
  std::vector<Rat> grid = grid_points(I, step);
  for (const Rat& p0 : grid) {
    int zeros = 0;
    Rat previous;
    bool first = true;
    for (const Rat& p1 : grid) {
      Rat value = f.eval(p0, p1);
      if (!first && value < previous && report.monotone) {
        report.monotone = false;
        report.monotone_witness = {p0, p1};
      }
      if (sgn(value) == 0) ++zeros;
      previous = value;
      first = false;
    }
    if (zeros > 1 && report.unique_crossing) {
      report.unique_crossing = false;
      report.crossing_witness = p0;
    }
  }
  for (const Rat& p1 : grid) {
    Rat previous;
    bool first = true;
    for (const Rat& p0 : grid) {
      Rat value = f.eval(p0, p1);
      if (!first && value > previous && report.monotone) {
        report.monotone = false;
        report.monotone_witness = {p0, p1};
      }
      previous = value;
      first = false;
    }
  }
  return report;
}

}  // namespace

CrossingReport check_crossing_assumptions(const ContrastForm& form,
                                          const Rat& grid_step) {
  if (!(form.interval.lo < form.interval.hi))
    throw std::invalid_argument("interval must satisfy lo < hi");
  if (const auto* sf = std::get_if<SignForm>(&form.form))
    return check_sign_form(*sf);
  if (const auto* bf = std::get_if<BilinearForm>(&form.form))
    return check_bilinear(*bf, form.interval);
  return check_grid(std::get<GridEvalForm>(form.form), form.interval,
                    grid_step);
}

PhiPair build_phi(const ContrastForm& form) {
  Rat check_step = make_rat(1, 16);
  if (const auto* gf = std::get_if<GridEvalForm>(&form.form))
    check_step = gf->step;
  CrossingReport assumptions = check_crossing_assumptions(form, check_step);
  if (!assumptions.passed())
    throw std::invalid_argument(
        "crossing assumptions fail; no monotone replication exists");

  const Interval I = form.interval;
  PhiPair phi{I, Rat(I.lo - 1), Rat(I.hi + 1), Rat(0), form.kind(), {}};

  if (const auto* sf = std::get_if<SignForm>(&form.form)) {
    if (sgn(sf->when_greater) > 0) {
      phi.phi0_fn = [lo = phi.lo_sentinel](const Rat&) { return lo; };
    } else if (sgn(sf->when_less) < 0) {
      phi.phi0_fn = [hi = phi.hi_sentinel](const Rat&) { return hi; };
    } else {
      phi.phi0_fn = [](const Rat& p0) { return p0; };
    }
    return phi;
  }

  if (const auto* bf = std::get_if<BilinearForm>(&form.form)) {
    BilinearForm f = *bf;
    phi.phi0_fn = [f, I, lo = phi.lo_sentinel,
                   hi = phi.hi_sentinel](const Rat& p0) {
      Rat at_lo = eval_bilinear(f, p0, I.lo);
      if (sgn(at_lo) > 0) return lo;
      Rat at_hi = eval_bilinear(f, p0, I.hi);
      if (sgn(at_hi) < 0) return hi;
      Rat slope = f.p1_coef + f.cross_coef * p0;
      if (sgn(slope) == 0) {
        // constant slice; its sign was decided above, so it must be zero,
        // which the crossing assumptions exclude
        throw std::logic_error("flat zero slice slipped past the assumptions");
      }
      Rat root = -(f.constant + f.p0_coef * p0) / slope;
      return root;
    };
    return phi;
  }

  const GridEvalForm grid = std::get<GridEvalForm>(form.form);
  phi.root_tolerance = Rat(1) / Rat(mpz_class(1) << 40);
  phi.phi0_fn = [grid, I, lo = phi.lo_sentinel, hi = phi.hi_sentinel,
                 tol = phi.root_tolerance](const Rat& p0) {
    Rat at_lo = grid.eval(p0, I.lo);
    if (sgn(at_lo) > 0) return lo;
    Rat at_hi = grid.eval(p0, I.hi);
    if (sgn(at_hi) < 0) return hi;
    if (sgn(at_lo) == 0) return I.lo;
    if (sgn(at_hi) == 0) return I.hi;
    Rat low = I.lo, high = I.hi;
    while (Rat(high - low) > tol) {
      Rat mid = (low + high) / 2;
      int s = sgn(grid.eval(p0, mid));
      if (s == 0) return mid;
      (s < 0 ? low : high) = mid;
    }
    Rat midpoint = (low + high) / 2;
    return midpoint;
  };
  return phi;
}

EquivalenceReport check_equivalence(const ContrastForm& form,
                                    const PhiPair& phi, const Rat& grid_step) {
  EquivalenceReport report;
  std::vector<Rat> grid = grid_points(form.interval, grid_step);
  for (const Rat& p0 : grid) {
    Rat phi0 = phi.phi0(p0);
    for (const Rat& p1 : grid) {
      ++report.points;
      int lhs = sgn(form.eval(p0, p1));
      Rat gap = PhiPair::phi1(p1) - phi0;
      int rhs = sgn(gap);
      if (lhs == rhs) continue;
      if (sgn(phi.root_tolerance) > 0 && abs(gap) <= phi.root_tolerance) {
        ++report.indeterminate;
        continue;
      }
      ++report.mismatches;
      if (!report.first_mismatch) report.first_mismatch = {p0, p1};
    }
  }
  return report;
}

int recommend(const ContrastForm& form, const Rat& p0, const Rat& p1) {
  return sgn(form.eval(p0, p1));
}

int recommend(const ContrastForm& form, const State& state) {
  std::vector<Rat> means = mean_vector(state);
  if (means.size() != 2)
    throw std::invalid_argument("mean-space recommendation needs two decisions");
  return recommend(form, means[0], means[1]);
}

AmbiguityDemo extension_ambiguity_demo(const UtilityTable& utility,
                                       const Rat& p0, const Rat& p1) {
  ContrastForm asym = asymmetric_extension(utility).contrast();
  ContrastForm prod = product_extension(utility).contrast();
  AmbiguityDemo demo{asym.eval(p0, p1), prod.eval(p0, p1), 0, 0, false};
  demo.asymmetric_recommendation = sgn(demo.asymmetric_value);
  demo.product_recommendation = sgn(demo.product_value);
  demo.opposite =
      demo.asymmetric_recommendation * demo.product_recommendation == -1;
  return demo;
}

}  // namespace cfdt
