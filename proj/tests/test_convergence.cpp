#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "infotop/convergence.hpp"
#include "infotop/errors.hpp"
#include "infotop/fixtures.hpp"
#include "infotop/measure.hpp"

using namespace infotop;

namespace {

// Two-point single-axis sequence whose total variation against delta_p0 is
// exactly the requested value at each index.
MeasureSequence tv_schedule(std::vector<int> indices, std::vector<double> tv) {
  ProductSpace space({make_discrete_axis("P", {"p0", "p1"})});
  const DiscreteMeasure limit(space, {{{0}, 1.0}});
  std::map<int, double> plan;
  for (size_t k = 0; k < indices.size(); ++k) plan[indices[k]] = tv[k];
  auto gen = [space, plan](int n) {
    const double eps = plan.at(n) / 2.0;
    return DiscreteMeasure(space, {{{0}, 1.0 - eps}, {{1}, eps}});
  };
  return {std::move(indices), std::move(gen), limit};
}

// 2x2 grid with a checkerboard perturbation of size e; marginals stay
// uniform, so the joint-to-product density is 1 +/- 4e.
DiscreteMeasure grid_measure(double e) {
  ProductSpace space({make_discrete_axis("X", {"x0", "x1"}),
                      make_discrete_axis("Y", {"y0", "y1"})});
  return DiscreteMeasure(space, {{{0, 0}, 0.25 + e},
                                 {{0, 1}, 0.25 - e},
                                 {{1, 0}, 0.25 - e},
                                 {{1, 1}, 0.25 + e}});
}

MeasureSequence grid_sequence() {
  return {{10, 20, 50, 80, 100},
          [](int n) { return grid_measure(0.1 / n); },
          grid_measure(0.0)};
}

MeasureSequence jordan_sequence(std::vector<int> indices) {
  return {std::move(indices),
          [](int k) { return fixture_jordan(k).first; },
          fixture_jordan(1).second};
}

}  // namespace

TEST_CASE("analyze flags the shrinking observation gap as converging") {
  MeasureSequence seq{{50, 100, 150, 200, 250},
                      [](int n) { return fixture_sgn(n).first; },
                      fixture_sgn(1).second};
  const ConvergenceReport report = analyze(seq, {MetricId::W1});
  REQUIRE(report.traces.size() == 1);
  const MetricTrace& t = report.traces[0];
  CHECK(t.metric == MetricId::W1);
  CHECK(t.verdict == Verdict::ConvergingEvidence);
  REQUIRE(t.trace.size() == 5);
  for (const auto& [n, d] : t.trace)
    CHECK(d == doctest::Approx(2.0 / n).epsilon(1e-9));
}

TEST_CASE("analyze keeps the alternating-label sequence apart in tv") {
  MeasureSequence seq{{1, 2, 3, 4, 5, 6},
                      [](int n) { return fixture_rademacher(n, 6).first; },
                      fixture_rademacher(1, 6).second};
  const ConvergenceReport report = analyze(seq, {MetricId::Tv});
  REQUIRE(report.traces.size() == 1);
  CHECK(report.traces[0].verdict == Verdict::NonConvergingEvidence);
  for (const auto& [n, d] : report.traces[0].trace)
    CHECK(d == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("analyze verdict edge cases") {
  SUBCASE("a bump inside the window blocks the converging verdict") {
    const ConvergenceReport r =
        analyze(tv_schedule({1, 2, 3, 4, 5, 6},
                            {0.5, 0.009, 0.0095, 0.008, 0.007, 0.006}),
                {MetricId::Tv});
    CHECK(r.traces[0].verdict == Verdict::Inconclusive);
  }
  SUBCASE("a bump within slack is still non-increasing") {
    AnalyzeParams p;
    p.slack = 1e-6;
    const ConvergenceReport r = analyze(
        tv_schedule({1, 2, 3, 4, 5},
                    {0.009, 0.008, 0.007, 0.006, 0.006 + 5e-10}),
        {MetricId::Tv}, p);
    CHECK(r.traces[0].verdict == Verdict::ConvergingEvidence);
  }
  SUBCASE("a plateau between the tolerances stays inconclusive") {
    const ConvergenceReport r = analyze(
        tv_schedule({1, 2, 3, 4, 5}, {0.05, 0.05, 0.05, 0.05, 0.05}),
        {MetricId::Tv});
    CHECK(r.traces[0].verdict == Verdict::Inconclusive);
  }
  SUBCASE("separation threshold is adjustable") {
    AnalyzeParams loose;
    loose.tol_sep = 0.6;
    const MeasureSequence seq = jordan_sequence({1, 2, 5, 10, 50});
    AnalyzeParams tight;
    CHECK(analyze(seq, {MetricId::Info}, tight).traces[0].verdict ==
          Verdict::NonConvergingEvidence);
    CHECK(analyze(seq, {MetricId::Info}, loose).traces[0].verdict ==
          Verdict::Inconclusive);
  }
}

TEST_CASE("analyze keeps the requested metric order and marginal info axes") {
  MeasureSequence seq{{4, 10, 100},
                      [](int n) { return fixture_sgn(n).first; },
                      fixture_sgn(1).second};
  AnalyzeParams p;
  p.info_axes = std::vector<std::string>{"A", "B"};
  const ConvergenceReport report =
      analyze(seq, {MetricId::Info, MetricId::Tv}, p);
  REQUIRE(report.traces.size() == 2);
  CHECK(report.traces[0].metric == MetricId::Info);
  CHECK(report.traces[1].metric == MetricId::Tv);
  const auto& info = report.traces[0].trace;
  REQUIRE(info.size() == 3);
  CHECK(info[0].second == doctest::Approx(0.25 + 1.0 / 4).epsilon(1e-9));
  CHECK(info[1].second == doctest::Approx(0.25 + 1.0 / 10).epsilon(1e-9));
  CHECK(info[2].second == doctest::Approx(0.25 + 1.0 / 100).epsilon(1e-9));
}

TEST_CASE("analyze fills in a default set family for the setwise metric") {
  const ConvergenceReport r = analyze(
      tv_schedule({1, 2, 3}, {0.5, 0.25, 0.125}), {MetricId::Setwise});
  CHECK(r.params.family.has_value());
  CHECK_FALSE(r.params.family->empty());
  REQUIRE(r.traces[0].trace.size() == 3);
  // on a two-point axis the setwise gap over singletons equals half the tv
  CHECK(r.traces[0].trace[0].second == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("analyze validates indices and the generator") {
  ProductSpace space({make_discrete_axis("P", {"p0"})});
  const DiscreteMeasure point(space, {{{0}, 1.0}});
  auto id_gen = [point](int) { return point; };
  SUBCASE("no indices") {
    CHECK_THROWS_WITH_AS(analyze({{}, id_gen, point}, {MetricId::Tv}),
                         "sequence has no indices", ValidationError);
  }
  SUBCASE("non-positive index") {
    CHECK_THROWS_WITH_AS(analyze({{0, 1}, id_gen, point}, {MetricId::Tv}),
                         "sequence indices must be positive", ValidationError);
  }
  SUBCASE("non-increasing indices") {
    CHECK_THROWS_WITH_AS(analyze({{3, 3}, id_gen, point}, {MetricId::Tv}),
                         "sequence indices must be strictly increasing",
                         ValidationError);
  }
  SUBCASE("generator failure is wrapped with the index") {
    auto gen = [point](int n) -> DiscreteMeasure {
      if (n == 3) throw std::runtime_error("boom");
      return point;
    };
    CHECK_THROWS_WITH_AS(analyze({{1, 2, 3}, gen, point}, {MetricId::Tv}),
                         "sequence generator failed at index 3: boom",
                         ValidationError);
  }
  SUBCASE("member with foreign axes rejected") {
    ProductSpace other({make_discrete_axis("Q", {"q0"})});
    const DiscreteMeasure stranger(other, {{{0}, 1.0}});
    auto gen = [stranger](int) { return stranger; };
    CHECK_THROWS_WITH_AS(analyze({{1}, gen, point}, {MetricId::Tv}),
                         "sequence member at index 1 does not share the "
                         "limit's axes",
                         ValidationError);
  }
}

TEST_CASE("density criterion accepts uniform convergence on a fixed grid") {
  const DensityReport r = density_criterion(grid_sequence());
  CHECK(r.verdict == CriterionVerdict::Satisfied);
  REQUIRE(r.sup_trace.size() == 5);
  CHECK(r.sup_trace.back().second == doctest::Approx(0.004).epsilon(1e-9));
  for (const auto& [n, c] : r.undefined_mismatches) CHECK(c == 0);
  REQUIRE(r.info_cross_check.has_value());
  CHECK(*r.info_cross_check == Verdict::ConvergingEvidence);
}

TEST_CASE("density criterion rejects a constant density gap") {
  MeasureSequence seq{{1, 2, 3, 4, 5},
                      [](int) { return grid_measure(0.15); },
                      grid_measure(0.0)};
  const DensityReport r = density_criterion(seq);
  CHECK(r.verdict == CriterionVerdict::Violated);
  CHECK(r.explanation.find("does not settle") != std::string::npos);
  for (const auto& [n, sup] : r.sup_trace)
    CHECK(sup == doctest::Approx(0.6).epsilon(1e-9));
}

TEST_CASE("density criterion flags undefined member densities as violations") {
  ProductSpace space({make_discrete_axis("X", {"x0", "x1"}),
                      make_discrete_axis("Y", {"y0", "y1"})});
  const DiscreteMeasure corner(space, {{{0, 0}, 1.0}});
  MeasureSequence seq{{1, 2, 3, 4, 5}, [corner](int) { return corner; },
                      grid_measure(0.0)};
  const DensityReport r = density_criterion(seq);
  CHECK(r.verdict == CriterionVerdict::Violated);
  CHECK(r.explanation.find("mismatched regions") != std::string::npos);
  for (const auto& [n, c] : r.undefined_mismatches) CHECK(c == 3);
}

TEST_CASE("density criterion is inapplicable when the limit density vanishes") {
  const DensityReport r = density_criterion(jordan_sequence({1, 2, 5}));
  CHECK(r.verdict == CriterionVerdict::Inapplicable);
  CHECK(r.explanation.find("undefined at atoms") != std::string::npos);
  CHECK_FALSE(r.info_cross_check.has_value());
}

TEST_CASE("density criterion needs two axes") {
  MeasureSequence seq{{1, 2},
                      [](int n) { return fixture_sgn(n).first; },
                      fixture_sgn(1).second};
  CHECK_THROWS_AS(density_criterion(seq), ValidationError);
  CHECK_THROWS_AS(kernel_criterion(seq), ValidationError);
}

TEST_CASE("kernel criterion accepts pointwise conditional convergence") {
  const KernelReport r = kernel_criterion(grid_sequence());
  CHECK(r.verdict == CriterionVerdict::Satisfied);
  REQUIRE(r.traces.size() == 2);
  CHECK(r.traces[0].x_id == "x0");
  CHECK(r.traces[1].x_id == "x1");
  for (const auto& tr : r.traces) {
    REQUIRE(tr.trace.size() == 5);
    // rows move by 2e = 0.2 / n under the unit ground metric
    for (const auto& [n, d] : tr.trace)
      CHECK(d == doctest::Approx(0.2 / n).epsilon(1e-9));
  }
  REQUIRE(r.info_cross_check.has_value());
  CHECK(*r.info_cross_check == Verdict::ConvergingEvidence);
}

TEST_CASE("kernel criterion rejects a conditional that never moves") {
  const KernelReport r = kernel_criterion(jordan_sequence({1, 2, 5, 10, 50}));
  CHECK(r.verdict == CriterionVerdict::Violated);
  CHECK(r.explanation.find("stays away from zero") != std::string::npos);
  REQUIRE(r.traces.size() == 1);
  for (const auto& [n, d] : r.traces[0].trace)
    CHECK(d == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("kernel criterion rejects members missing a limit-support row") {
  ProductSpace space({make_discrete_axis("X", {"x0", "x1"}),
                      make_discrete_axis("Y", {"y0", "y1"})});
  const DiscreteMeasure corner(space, {{{0, 0}, 1.0}});
  MeasureSequence seq{{1, 2, 3}, [corner](int) { return corner; },
                      grid_measure(0.0)};
  const KernelReport r = kernel_criterion(seq);
  CHECK(r.verdict == CriterionVerdict::Violated);
  CHECK(r.explanation.find("puts no mass") != std::string::npos);
}

TEST_CASE("kernel criterion is inapplicable on a moving conditioning axis") {
  ProductSpace wide({make_discrete_axis("X", {"x0", "x1", "x2"}),
                     make_discrete_axis("Y", {"y0", "y1"})});
  const DiscreteMeasure moved(wide, {{{2, 0}, 1.0}});
  MeasureSequence seq{{1, 2, 3}, [moved](int) { return moved; },
                      grid_measure(0.0)};
  const KernelReport r = kernel_criterion(seq);
  CHECK(r.verdict == CriterionVerdict::Inapplicable);
  CHECK(r.explanation.find("point set moves") != std::string::npos);
}
