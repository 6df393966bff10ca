#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "infotop/lift.hpp"
#include "infotop/measure.hpp"
#include "infotop/metrics.hpp"

namespace infotop {

// A sequence given by a generator over an increasing index list, plus the
// candidate limit every index is compared against. Generated measures must
// share axis count and names with the limit; atom coordinates may move.
struct MeasureSequence {
  std::vector<int> indices;
  std::function<DiscreteMeasure(int)> generator;
  DiscreteMeasure limit;
};

enum class MetricId { Tv, Setwise, W1, Prohorov, Info };

enum class Verdict { ConvergingEvidence, NonConvergingEvidence, Inconclusive };

struct AnalyzeParams {
  double tol_conv = 1e-2;  // final distance below this counts as converging
  double tol_sep = 1e-1;   // whole last window above this counts as separated
  int window = 5;
  double slack = 1e-6;  // non-increase tolerance inside the window
  GroundMetric ground;  // ground metric for w1
  InnerMetricKind info_base = InnerMetricKind::W1Truncated;
  // When set, the info distance is taken between marginals on these axes.
  std::optional<std::vector<std::string>> info_axes;
  // Setwise family; defaults to the limit space's default family.
  std::optional<SetFamily> family;
  int family_cap = 4096;
};

struct MetricTrace {
  MetricId metric;
  std::vector<std::pair<int, double>> trace;  // (index, distance)
  Verdict verdict;
};

struct ConvergenceReport {
  std::vector<MetricTrace> traces;
  AnalyzeParams params;
};

// Distance traces for the requested metrics against the limit. The verdict
// per metric: converging-evidence iff the final distance is below tol_conv
// and the last `window` values are non-increasing within slack;
// non-converging-evidence iff the whole last window sits at or above
// tol_sep; inconclusive otherwise. Evidence, not proof.
ConvergenceReport analyze(const MeasureSequence& seq,
                          const std::vector<MetricId>& metrics,
                          const AnalyzeParams& params = {});

enum class CriterionVerdict { Satisfied, Violated, Inapplicable };

struct DensityReport {
  CriterionVerdict verdict;
  // sup over the union support of |f_n - f| where both densities exist
  std::vector<std::pair<int, double>> sup_trace;
  // per index: union atoms where exactly one of the densities exists
  std::vector<std::pair<int, int>> undefined_mismatches;
  std::string explanation;
  // Verdict of analyze(info) on the same sequence, filled when satisfied:
  // uniform density convergence forces info convergence.
  std::optional<Verdict> info_cross_check;
};

// Uniform-convergence test of the joint-to-product densities
// f_n = mu_n / (mu_n^X x mu_n^Y) against the limit's density on the union of
// supports. Inapplicable when the limit density is undefined somewhere the
// running measures put mass (typical for moving supports).
DensityReport density_criterion(const MeasureSequence& seq,
                                const AnalyzeParams& params = {});

struct KernelTrace {
  std::string x_id;  // conditioning point
  std::vector<std::pair<int, double>> trace;
};

struct KernelReport {
  CriterionVerdict verdict;
  std::vector<KernelTrace> traces;
  std::string explanation;
  std::optional<Verdict> info_cross_check;
};

// Conditional-kernel convergence over a fixed first axis: for every x in the
// limit marginal's support, traces base(mu_n(.|x), mu(.|x)). Only the finite
// reduction is implemented: the first axis must be the same point set at
// every index, else the verdict is inapplicable.
KernelReport kernel_criterion(const MeasureSequence& seq,
                              const AnalyzeParams& params = {});

}  // namespace infotop
