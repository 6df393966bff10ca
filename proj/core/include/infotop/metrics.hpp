#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "infotop/measure.hpp"

namespace infotop {

// Ground metric for transport distances. RawSum is the plain product metric
// (sum of axis distances); Truncated caps each axis contribution at 1, which
// keeps the distance bounded on unbounded coordinate ranges and metrizes
// weak-* convergence for the measures handled here.
enum class GroundMode { RawSum, Truncated };

struct GroundMetric {
  GroundMode mode = GroundMode::Truncated;
  // Direct cost override: entry (k,l) is the ground cost between atom k of
  // the left measure and atom l of the right one. Metric axioms become the
  // caller's responsibility.
  std::optional<std::vector<std::vector<double>>> override_matrix;
};

// Coupling between two atom lists; flow entries are (source atom index,
// target atom index, mass) in lexicographic order.
struct TransportPlan {
  std::vector<double> source;
  std::vector<double> target;
  std::vector<std::tuple<int, int, double>> flow;
};

// Throws ValidationError when row/column sums stray from the endpoints or the
// total mass is off 1 by more than tol.
void validate_plan(const TransportPlan& plan, double tol = 1e-9);

// Total variation in the [0,2] convention: sum over atoms of |mu - nu|,
// atoms matched across the two supports (coordinates for euclidean axes, ids
// for discrete ones).
double tv_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

// A measurable set, described either as a union of rectangles (per-axis point
// id lists; omitted axes mean "all points") or as an explicit atom list.
struct SetRect {
  std::map<std::string, std::vector<std::string>> per_axis;
};
struct SetDesc {
  std::string name;
  std::vector<SetRect> rects;
  std::vector<std::vector<std::string>> atoms;
};
using SetFamily = std::vector<SetDesc>;

// Generating family used when the caller supplies none: rectangles built from
// per-axis subsets (every nonempty subset for axes with at most 12 points,
// binary-split contiguous ranges in coordinate order for larger ones),
// enumerated coarse to fine and capped.
SetFamily default_set_family(const ProductSpace& space, int cap = 4096);

// Largest |mu(S) - nu(S)| over the family.
double setwise_gap(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                   const SetFamily& family);

// Exact Wasserstein-1 distance and an optimal plan, computed by min-cost
// flow over the merged supports.
std::pair<double, TransportPlan> wasserstein1(const DiscreteMeasure& mu,
                                              const DiscreteMeasure& nu,
                                              const GroundMetric& ground = {});

// Exact Prohorov distance under the raw product metric, via Strassen's
// coupling characterization and max-flow feasibility.
double prohorov(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

}  // namespace infotop
