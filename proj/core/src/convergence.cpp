#include "infotop/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "embed.hpp"
#include "infotop/errors.hpp"

namespace infotop {

namespace {

DiscreteMeasure generate_at(const MeasureSequence& seq, int index) {
  DiscreteMeasure m = [&] {
    try {
      return seq.generator(index);
    } catch (const std::exception& e) {
      throw ValidationError("sequence generator failed at index " +
                            std::to_string(index) + ": " + e.what());
    }
  }();
  if (m.space().axis_names() != seq.limit.space().axis_names())
    throw ValidationError("sequence member at index " + std::to_string(index) +
                          " does not share the limit's axes");
  return m;
}

void check_indices(const MeasureSequence& seq) {
  if (seq.indices.empty())
    throw ValidationError("sequence has no indices");
  for (size_t k = 0; k < seq.indices.size(); ++k) {
    if (seq.indices[k] <= 0)
      throw ValidationError("sequence indices must be positive");
    if (k > 0 && seq.indices[k] <= seq.indices[k - 1])
      throw ValidationError("sequence indices must be strictly increasing");
  }
}

Verdict classify(const std::vector<std::pair<int, double>>& trace,
                 const AnalyzeParams& p) {
  const int n = static_cast<int>(trace.size());
  const int w = std::min(p.window, n);
  const double last = trace.back().second;

  bool non_increasing = true;
  for (int k = n - w; k + 1 < n; ++k)
    if (trace[k + 1].second > trace[k].second + p.slack) non_increasing = false;
  if (last < p.tol_conv && non_increasing) return Verdict::ConvergingEvidence;

  double window_min = last;
  for (int k = n - w; k < n; ++k)
    window_min = std::min(window_min, trace[k].second);
  if (window_min >= p.tol_sep) return Verdict::NonConvergingEvidence;
  return Verdict::Inconclusive;
}

}  // namespace

ConvergenceReport analyze(const MeasureSequence& seq,
                          const std::vector<MetricId>& metrics,
                          const AnalyzeParams& params) {
  check_indices(seq);
  AnalyzeParams used = params;
  const bool wants_setwise =
      std::find(metrics.begin(), metrics.end(), MetricId::Setwise) !=
      metrics.end();
  if (wants_setwise && !used.family)
    used.family = default_set_family(seq.limit.space(), used.family_cap);

  ConvergenceReport report;
  report.traces.reserve(metrics.size());
  for (MetricId m : metrics) report.traces.push_back({m, {}, Verdict::Inconclusive});

  for (int index : seq.indices) {
    const DiscreteMeasure mu = generate_at(seq, index);
    for (auto& t : report.traces) {
      double d = 0.0;
      switch (t.metric) {
        case MetricId::Tv:
          d = tv_distance(mu, seq.limit);
          break;
        case MetricId::Setwise:
          d = setwise_gap(mu, seq.limit, *used.family);
          break;
        case MetricId::W1:
          d = wasserstein1(mu, seq.limit, used.ground).first;
          break;
        case MetricId::Prohorov:
          d = prohorov(mu, seq.limit);
          break;
        case MetricId::Info:
          if (used.info_axes)
            d = info_distance(marginal(mu, *used.info_axes),
                              marginal(seq.limit, *used.info_axes),
                              used.info_base);
          else
            d = info_distance(mu, seq.limit, used.info_base);
          break;
      }
      t.trace.emplace_back(index, d);
    }
  }
  for (auto& t : report.traces) t.verdict = classify(t.trace, used);
  report.params = std::move(used);
  return report;
}

namespace {

// Density of a two-axis measure against the product of its own marginals,
// evaluated on merged index tuples. Missing value = undefined (a marginal
// vanishes there).
struct DensityTable {
  std::map<std::vector<int>, double> values;
};

DensityTable density_on(
    const std::vector<std::pair<std::vector<int>, double>>& atoms,
    const std::vector<std::vector<int>>& union_tuples) {
  std::map<int, double> mx, my;
  std::map<std::vector<int>, double> mass;
  for (const auto& [t, w] : atoms) {
    mx[t[0]] += w;
    my[t[1]] += w;
    mass[t] += w;
  }
  DensityTable out;
  for (const auto& t : union_tuples) {
    const auto ix = mx.find(t[0]);
    const auto iy = my.find(t[1]);
    if (ix == mx.end() || iy == my.end()) continue;
    const auto im = mass.find(t);
    out.values[t] = (im == mass.end() ? 0.0 : im->second) /
                    (ix->second * iy->second);
  }
  return out;
}

}  // namespace

DensityReport density_criterion(const MeasureSequence& seq,
                                const AnalyzeParams& params) {
  check_indices(seq);
  if (seq.limit.space().arity() != 2)
    throw ValidationError("density_criterion expects two-axis measures");

  DensityReport report;
  bool limit_undefined_on_needed = false;
  for (int index : seq.indices) {
    const DiscreteMeasure mu = generate_at(seq, index);
    const detail::MergedPair m =
        detail::merge_measures(mu, seq.limit, "density_criterion");

    std::vector<std::vector<int>> union_tuples;
    for (const auto& [t, w] : m.left) union_tuples.push_back(t);
    for (const auto& [t, w] : m.right) union_tuples.push_back(t);
    std::sort(union_tuples.begin(), union_tuples.end());
    union_tuples.erase(std::unique(union_tuples.begin(), union_tuples.end()),
                       union_tuples.end());

    const DensityTable fn = density_on(m.left, union_tuples);
    const DensityTable f = density_on(m.right, union_tuples);

    double sup = 0.0;
    int mismatches = 0;
    for (const auto& t : union_tuples) {
      const auto a = fn.values.find(t);
      const auto b = f.values.find(t);
      const bool has_n = a != fn.values.end();
      const bool has_lim = b != f.values.end();
      if (has_n && has_lim) {
        sup = std::max(sup, std::abs(a->second - b->second));
      } else {
        ++mismatches;
        if (has_n && a->second > 0.0 && !has_lim) limit_undefined_on_needed = true;
      }
    }
    report.sup_trace.emplace_back(index, sup);
    report.undefined_mismatches.emplace_back(index, mismatches);
  }

  if (limit_undefined_on_needed) {
    report.verdict = CriterionVerdict::Inapplicable;
    report.explanation =
        "the limit's density is undefined at atoms the sequence puts mass on; "
        "uniform density comparison has no value there";
    return report;
  }

  bool any_mismatch = false;
  for (const auto& [i, c] : report.undefined_mismatches) any_mismatch |= c > 0;
  const Verdict v = classify(report.sup_trace, params);
  if (!any_mismatch && v == Verdict::ConvergingEvidence) {
    report.verdict = CriterionVerdict::Satisfied;
    report.explanation =
        "densities converge uniformly on the union of supports; this forces "
        "convergence in the information metric";
    report.info_cross_check =
        analyze(seq, {MetricId::Info}, params).traces[0].verdict;
  } else {
    report.verdict = CriterionVerdict::Violated;
    report.explanation = any_mismatch
                             ? "densities are undefined on mismatched regions "
                               "along the sequence"
                             : "density gap does not settle below tolerance";
  }
  return report;
}

KernelReport kernel_criterion(const MeasureSequence& seq,
                              const AnalyzeParams& params) {
  check_indices(seq);
  if (seq.limit.space().arity() != 2)
    throw ValidationError("kernel_criterion expects two-axis measures");

  KernelReport report;
  const auto& xaxis = seq.limit.space().axis(0);

  // The finite reduction needs one fixed conditioning axis along the whole
  // sequence; moving observation supports have no pointwise trace.
  std::vector<DiscreteMeasure> members;
  for (int index : seq.indices) {
    DiscreteMeasure mu = generate_at(seq, index);
    if (!mu.space().axis(0).same_structure(xaxis)) {
      report.verdict = CriterionVerdict::Inapplicable;
      report.explanation =
          "first-axis point set moves across the sequence; the criterion is "
          "implemented only in its fixed-grid reduction";
      return report;
    }
    members.push_back(std::move(mu));
  }

  const std::string xname = xaxis.name();
  auto [lim_marg, lim_kernel] = disintegrate(seq.limit, {xname});
  std::vector<Kernel> member_kernels;
  for (const auto& m : members)
    member_kernels.push_back(disintegrate(m, {xname}).second);

  bool all_defined = true;
  for (const auto& [xt, lim_row] : lim_kernel.rows) {
    KernelTrace tr;
    tr.x_id = xaxis.point(xt[0]).id;
    for (size_t k = 0; k < members.size(); ++k) {
      const auto row = member_kernels[k].rows.find(xt);
      if (row == member_kernels[k].rows.end()) {
        all_defined = false;
        break;
      }
      const double d =
          params.info_base == InnerMetricKind::W1Truncated
              ? wasserstein1(row->second, lim_row, {}).first
              : prohorov(row->second, lim_row);
      tr.trace.emplace_back(seq.indices[k], d);
    }
    report.traces.push_back(std::move(tr));
  }

  if (!all_defined) {
    report.verdict = CriterionVerdict::Violated;
    report.explanation =
        "some sequence member puts no mass on a limit-support point, so its "
        "conditional there is undefined";
    return report;
  }

  bool all_converge = true;
  for (const auto& tr : report.traces)
    if (classify(tr.trace, params) != Verdict::ConvergingEvidence)
      all_converge = false;
  if (all_converge) {
    report.verdict = CriterionVerdict::Satisfied;
    report.explanation =
        "conditionals converge at every limit-support point on the fixed "
        "grid; this forces convergence in the information metric";
    report.info_cross_check =
        analyze(seq, {MetricId::Info}, params).traces[0].verdict;
  } else {
    report.verdict = CriterionVerdict::Violated;
    report.explanation =
        "a conditional trace stays away from zero on the fixed grid";
  }
  return report;
}

}  // namespace infotop
