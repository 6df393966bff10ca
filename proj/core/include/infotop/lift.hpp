#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "infotop/measure.hpp"

namespace infotop {

// Metric used between the inner measures carried by lifted atoms, and as the
// outer metric between lifted measures. The two are never mixed.
enum class InnerMetricKind { W1Truncated, Prohorov };

struct LiftedAtom {
  int base;               // index into the base axis
  DiscreteMeasure inner;  // one-axis measure over the inner axis
  std::vector<int> extra; // indices into the trailing axes, if any
  double weight;
};

// Measure over base x P(inner), optionally with trailing plain axes. Each
// atom carries a whole inner measure. Lift images are functional (at most
// one atom per base point); glued measures generally are not.
class LiftedMeasure {
 public:
  LiftedMeasure(SpacePtr base, SpacePtr inner, std::vector<SpacePtr> extras,
                std::vector<LiftedAtom> atoms, bool functional,
                InnerMetricKind inner_metric = InnerMetricKind::W1Truncated);

  const SpacePtr& base_space() const { return base_; }
  const SpacePtr& inner_space() const { return inner_; }
  const std::vector<SpacePtr>& extra_spaces() const { return extras_; }
  const std::vector<LiftedAtom>& atoms() const { return atoms_; }
  bool functional() const { return functional_; }
  InnerMetricKind inner_metric() const { return inner_metric_; }
  int size() const { return static_cast<int>(atoms_.size()); }

  // Weights summed per base point, as a measure on the base axis.
  DiscreteMeasure base_marginal() const;

 private:
  SpacePtr base_, inner_;
  std::vector<SpacePtr> extras_;
  std::vector<LiftedAtom> atoms_;
  bool functional_;
  InnerMetricKind inner_metric_;
};

// Lift of a two-axis measure: one atom per support point of the first-axis
// marginal, carrying the conditional on the second axis as inner measure.
LiftedMeasure psi(const DiscreteMeasure& mu,
                  InnerMetricKind inner_metric = InnerMetricKind::W1Truncated);

// Flatten back onto base x inner: weight(a,b) = sum over atoms at base a of
// weight * inner(b). Inverse of psi on functional lifts; trailing axes, if
// present, are summed out.
DiscreteMeasure psi_inv(const LiftedMeasure& nu);

// Glue two-axis measures along the named shared axis:
// weight(x,y,z) = mu(x|y) * nu(y,z), result axes (X, Y, Z). The shared-axis
// marginals must agree within tol, else a consistency error carrying the gap.
DiscreteMeasure chi1_glue(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                          const std::string& shared, double tol = 1e-9);

// The same gluing with the lifted measure in the X role and its base as the
// shared axis: atoms (a, zeta) weighted nu(zeta|a) * mu(a,c) for each point
// (a,c) of mu, c becoming a trailing axis of the result.
LiftedMeasure phi1_glue(const LiftedMeasure& nu, const DiscreteMeasure& mu,
                        double tol = 1e-9);

// Flatten the inner coordinate: weight(x,y,...) = sum over atoms at (x,...)
// of weight * inner(y). Result axes: base, inner axis, then trailing axes.
DiscreteMeasure chi2_flatten(const LiftedMeasure& nu);

// Integrand given pointwise on base x inner; integrates the averaged
// function (a, zeta) -> sum_y g(a,y) zeta(y) against the lifted measure,
// which equals integrating g against the flattening.
struct PointIntegrand {
  std::map<std::pair<std::string, std::string>, double> table;
};

// Integrand given directly on inner measures; entries are matched against
// atom inners by point ids within tol. Covers set functions of the inner
// coordinate that no pointwise table can express.
struct InnerIntegrand {
  std::vector<std::pair<DiscreteMeasure, double>> entries;
  double tol = 1e-12;
};

double integrate_lifted(const PointIntegrand& g, const LiftedMeasure& nu);
double integrate_lifted(const InnerIntegrand& h, const LiftedMeasure& nu);

// Join along the unique shared axis A: weight(a,b,c) = mu(b|a) * nu(a,c),
// axes ordered (A, B, C). Equals flattening the glued lift of mu; computed by
// the direct formula. A-marginals must agree within tol.
DiscreteMeasure phi(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                    double tol = 1e-9);

// Distance between the lifts of two two-axis measures: the chosen outer
// metric with ground distance min(d_A(a,a'), 1) + base(zeta, zeta') between
// lifted atoms, where base is the same metric one level down. Never below
// the plain truncated-W1 distance between the originals (flattening is
// 1-Lipschitz).
double info_distance(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2,
                     InnerMetricKind base = InnerMetricKind::W1Truncated);

// Cost table keyed by point ids (a, b, c).
using CostTable = std::map<std::array<std::string, 3>, double>;

// Integral of c against phi(mu, nu), computed from the factors directly
// without materializing the joint.
double expected_cost(const CostTable& c, const DiscreteMeasure& mu,
                     const DiscreteMeasure& nu, double tol = 1e-9);

}  // namespace infotop
