#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "infotop/errors.hpp"
#include "infotop/metrics.hpp"
#include "oracles.hpp"

using namespace infotop;

namespace {

// Three random measures on one shared random space, for metric-axiom checks.
std::vector<DiscreteMeasure> random_triple(std::mt19937_64& rng) {
  ProductSpace space(
      {testor::rand_axis(rng, "A", 4), testor::rand_axis(rng, "B", 4)});
  std::vector<DiscreteMeasure> out;
  for (int i = 0; i < 3; ++i) out.push_back(testor::rand_measure(rng, space));
  return out;
}

}  // namespace

TEST_CASE("tv distance agrees with the union-key oracle") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 40; ++trial) {
    const auto t = random_triple(rng);
    CHECK(tv_distance(t[0], t[1]) ==
          doctest::Approx(testor::oracle_tv(t[0], t[1])).epsilon(1e-12));
    CHECK(tv_distance(t[0], t[0]) == 0.0);
    CHECK(tv_distance(t[0], t[1]) == tv_distance(t[1], t[0]));
    CHECK(tv_distance(t[0], t[2]) <=
          tv_distance(t[0], t[1]) + tv_distance(t[1], t[2]) + 1e-12);
    CHECK(tv_distance(t[0], t[1]) <= 2.0 + 1e-12);
  }
}

TEST_CASE("tv distance matches euclidean atoms across different supports") {
  const DiscreteMeasure a(ProductSpace({make_real_axis("X", {0.0, 1.0})}),
                          {{{0}, 0.5}, {{1}, 0.5}});
  const DiscreteMeasure b(ProductSpace({make_real_axis("X", {1.0, 2.0})}),
                          {{{0}, 0.5}, {{1}, 0.5}});
  // the two copies of x = 1 cancel, the outer atoms do not
  CHECK(tv_distance(a, b) == doctest::Approx(1.0));
  const DiscreteMeasure c(ProductSpace({make_real_axis("X", {3.0, 4.0})}),
                          {{{0}, 0.5}, {{1}, 0.5}});
  CHECK(tv_distance(a, c) == doctest::Approx(2.0));
}

TEST_CASE("validate_plan checks endpoints and total mass") {
  TransportPlan plan;
  plan.source = {0.5, 0.5};
  plan.target = {0.25, 0.75};
  plan.flow = {{0, 0, 0.25}, {0, 1, 0.25}, {1, 1, 0.5}};
  CHECK_NOTHROW(validate_plan(plan));
  plan.flow[2] = {1, 1, 0.4};
  CHECK_THROWS_AS(validate_plan(plan), ValidationError);
}

TEST_CASE("wasserstein1 agrees with the coupling LP on random instances") {
  std::mt19937_64 rng(505);
  for (int trial = 0; trial < 60; ++trial) {
    const auto t = random_triple(rng);
    const GroundMode mode =
        trial % 2 == 0 ? GroundMode::Truncated : GroundMode::RawSum;
    GroundMetric g;
    g.mode = mode;
    const auto [value, plan] = wasserstein1(t[0], t[1], g);
    validate_plan(plan);
    double plan_cost = 0.0;
    for (const auto& [i, j, f] : plan.flow)
      plan_cost += f * testor::ground_cost(t[0], t[1], i, j, mode);
    CHECK(value == doctest::Approx(plan_cost).epsilon(1e-9));
    CHECK(value ==
          doctest::Approx(testor::oracle_w1_lp(t[0], t[1], mode)).epsilon(1e-9));
  }
}

TEST_CASE("wasserstein1 satisfies the metric axioms") {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 30; ++trial) {
    const auto t = random_triple(rng);
    const double d01 = wasserstein1(t[0], t[1], {}).first;
    const double d10 = wasserstein1(t[1], t[0], {}).first;
    const double d02 = wasserstein1(t[0], t[2], {}).first;
    const double d12 = wasserstein1(t[1], t[2], {}).first;
    CHECK(wasserstein1(t[0], t[0], {}).first <= 1e-12);
    CHECK(d01 == doctest::Approx(d10).epsilon(1e-9));
    CHECK(d02 <= d01 + d12 + 1e-9);
    // per-axis truncation keeps every pairwise cost at most the axis count
    CHECK(d01 <= 2.0 + 1e-12);
  }
}

TEST_CASE("truncated wasserstein1 is dominated by tv on two-axis instances") {
  std::mt19937_64 rng(707);
  for (int trial = 0; trial < 40; ++trial) {
    const auto t = random_triple(rng);
    CHECK(wasserstein1(t[0], t[1], {}).first <=
          tv_distance(t[0], t[1]) + 1e-9);
  }
}

TEST_CASE("wasserstein1 on a line matches the cdf-area formula") {
  std::mt19937_64 rng(808);
  std::uniform_int_distribution<int> grid(0, 96);
  std::uniform_int_distribution<int> npts(2, 10);
  for (int trial = 0; trial < 20; ++trial) {
    // separate supports on the same axis name; atoms merge by coordinate
    auto line_measure = [&] {
      std::set<double> cs;
      const int n = npts(rng);
      while (static_cast<int>(cs.size()) < n) cs.insert(grid(rng) / 8.0);
      ProductSpace space(
          {make_real_axis("X", std::vector<double>(cs.begin(), cs.end()))});
      return testor::rand_measure(rng, space);
    };
    const DiscreteMeasure mu = line_measure();
    const DiscreteMeasure nu = line_measure();
    GroundMetric g;
    g.mode = GroundMode::RawSum;
    CHECK(wasserstein1(mu, nu, g).first ==
          doctest::Approx(testor::oracle_w1_line(mu, nu)).epsilon(1e-9));
  }
}

TEST_CASE("wasserstein1 respects an override cost matrix") {
  ProductSpace space({make_discrete_axis("A", {"a0", "a1"})});
  const DiscreteMeasure mu(space, {{{0}, 0.5}, {{1}, 0.5}});
  const DiscreteMeasure nu(space, {{{0}, 0.25}, {{1}, 0.75}});
  GroundMetric g;
  g.override_matrix = {{0.0, 10.0}, {10.0, 0.0}};
  CHECK(wasserstein1(mu, nu, g).first == doctest::Approx(2.5));
  g.override_matrix = {{0.0, 10.0}};
  CHECK_THROWS_AS(wasserstein1(mu, nu, g), ValidationError);
}

TEST_CASE("prohorov agrees with the subset-enumeration oracle") {
  std::mt19937_64 rng(909);
  for (int trial = 0; trial < 40; ++trial) {
    ProductSpace space(
        {testor::rand_axis(rng, "A", 3), testor::rand_axis(rng, "B", 3)});
    const DiscreteMeasure mu = testor::rand_measure(rng, space);
    const DiscreteMeasure nu = testor::rand_measure(rng, space);
    if (mu.size() > 12) continue;
    CHECK(prohorov(mu, nu) ==
          doctest::Approx(testor::oracle_prohorov(mu, nu)).epsilon(1e-6));
  }
}

TEST_CASE("prohorov between point masses is the truncated distance") {
  ProductSpace space({make_real_axis("X", {0.0, 0.25, 5.0})});
  const DiscreteMeasure at0(space, {{{0}, 1.0}});
  const DiscreteMeasure near(space, {{{1}, 1.0}});
  const DiscreteMeasure far(space, {{{2}, 1.0}});
  CHECK(prohorov(at0, near) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(prohorov(at0, far) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(prohorov(at0, at0) <= 1e-12);
}

TEST_CASE("prohorov satisfies the metric axioms") {
  std::mt19937_64 rng(1010);
  for (int trial = 0; trial < 15; ++trial) {
    const auto t = random_triple(rng);
    const double d01 = prohorov(t[0], t[1]);
    CHECK(d01 == doctest::Approx(prohorov(t[1], t[0])).epsilon(1e-9));
    CHECK(prohorov(t[0], t[2]) <= d01 + prohorov(t[1], t[2]) + 1e-9);
    CHECK(d01 <= 1.0 + 1e-12);
  }
}

TEST_CASE("setwise_gap agrees with the direct membership oracle") {
  std::mt19937_64 rng(1111);
  for (int trial = 0; trial < 20; ++trial) {
    ProductSpace space(
        {testor::rand_axis(rng, "A", 4), testor::rand_axis(rng, "B", 4)});
    const DiscreteMeasure mu = testor::rand_measure(rng, space);
    const DiscreteMeasure nu = testor::rand_measure(rng, space);
    const SetFamily family = default_set_family(space, 256);
    CHECK(setwise_gap(mu, nu, family) ==
          doctest::Approx(testor::oracle_setwise(mu, nu, family))
              .epsilon(1e-12));
  }
}

TEST_CASE("set descriptions support rectangles and listed atoms") {
  ProductSpace space({make_discrete_axis("A", {"a0", "a1"}),
                      make_discrete_axis("B", {"b0", "b1"})});
  const DiscreteMeasure mu(space, {{{0, 0}, 0.5}, {{1, 1}, 0.5}});
  const DiscreteMeasure nu(space, {{{0, 1}, 0.5}, {{1, 0}, 0.5}});
  SUBCASE("rectangle over one axis") {
    SetDesc s{"row_a0", {SetRect{{{"A", {"a0"}}}}}, {}};
    CHECK(setwise_gap(mu, nu, {s}) == doctest::Approx(0.0));
  }
  SUBCASE("explicit atoms catch the diagonal") {
    SetDesc s{"diag", {}, {{"a0", "b0"}, {"a1", "b1"}}};
    CHECK(setwise_gap(mu, nu, {s}) == doctest::Approx(1.0));
  }
  SUBCASE("unknown axis rejected") {
    SetDesc s{"bad", {SetRect{{{"Z", {"a0"}}}}}, {}};
    CHECK_THROWS_AS(setwise_gap(mu, nu, {s}), ValidationError);
  }
  SUBCASE("unknown point rejected") {
    SetDesc s{"bad", {SetRect{{{"A", {"zz"}}}}}, {}};
    CHECK_THROWS_AS(setwise_gap(mu, nu, {s}), ValidationError);
  }
  SUBCASE("wrong atom arity rejected") {
    SetDesc s{"bad", {}, {{"a0"}}};
    CHECK_THROWS_AS(setwise_gap(mu, nu, {s}), ValidationError);
  }
}

TEST_CASE("default_set_family is capped, named and coarse to fine") {
  ProductSpace small({make_discrete_axis("A", {"a0", "a1"}),
                      make_discrete_axis("B", {"b0", "b1"})});
  const SetFamily family = default_set_family(small);
  // 3 nonempty subsets per axis (the full one included), every combination
  CHECK(family.size() == 9);
  std::set<std::string> names;
  for (const auto& s : family) names.insert(s.name);
  CHECK(names.size() == family.size());
  // the first sets leave at least one axis unrestricted
  CHECK(family[0].rects[0].per_axis.size() <= 1);

  ProductSpace wide({make_real_axis(
      "X", [] {
        std::vector<double> v;
        for (int i = 0; i < 40; ++i) v.push_back(i);
        return v;
      }())});
  const SetFamily split = default_set_family(wide, 64);
  CHECK(split.size() <= 64);
  CHECK(split.size() > 4);
}

TEST_CASE("setwise_gap requires matching axis names") {
  ProductSpace a({make_discrete_axis("A", {"a0"})});
  ProductSpace b({make_discrete_axis("B", {"b0"})});
  const DiscreteMeasure mu(a, {{{0}, 1.0}});
  const DiscreteMeasure nu(b, {{{0}, 1.0}});
  CHECK_THROWS_AS(setwise_gap(mu, nu, default_set_family(a)), ValidationError);
}
