#include <cmath>

#include "doctest.h"
#include "infotop/errors.hpp"
#include "infotop/space.hpp"

using namespace infotop;

TEST_CASE("real axis generates rank ids in coordinate order") {
  const SpacePtr ax = make_real_axis("X", {0.5, -1.0, 2.0});
  REQUIRE(ax->size() == 3);
  CHECK(ax->point(0).id == "x0");
  CHECK(ax->point(0).coords[0] == -1.0);
  CHECK(ax->point(2).id == "x2");
  CHECK(ax->point(2).coords[0] == 2.0);
  CHECK(ax->metric() == MetricKind::Euclidean);
  CHECK(ax->distance(0, 2) == doctest::Approx(3.0));
}

TEST_CASE("real axis pads ids past ten points") {
  std::vector<double> coords;
  for (int i = 0; i < 11; ++i) coords.push_back(i);
  const SpacePtr ax = make_real_axis("Pos", coords);
  CHECK(ax->point(0).id == "pos00");
  CHECK(ax->point(10).id == "pos10");
  // padded ids keep lexicographic order aligned with coordinate order
  for (int i = 0; i + 1 < ax->size(); ++i)
    CHECK(ax->point(i).id < ax->point(i + 1).id);
}

TEST_CASE("discrete axis keeps given order and rejects duplicates") {
  const SpacePtr ax = make_discrete_axis("B", {"z", "a"});
  CHECK(ax->point(0).id == "z");
  CHECK(ax->index_of("a") == 1);
  CHECK(ax->index_of("missing") == -1);
  CHECK(ax->distance(0, 1) == 1.0);
  CHECK(ax->distance(1, 1) == 0.0);
  CHECK_THROWS_AS(make_discrete_axis("B", {"a", "a"}), ValidationError);
}

TEST_CASE("matrix space validates metric axioms") {
  std::vector<SpacePoint> pts{{"p", {}}, {"q", {}}, {"r", {}}};
  SUBCASE("valid matrix accepted") {
    const SpacePtr ax = make_space(
        "M", pts, MetricKind::Matrix,
        {{0, 1, 1.5}, {1, 0, 1}, {1.5, 1, 0}});
    CHECK(ax->distance(0, 2) == 1.5);
  }
  SUBCASE("asymmetry rejected") {
    CHECK_THROWS_AS(make_space("M", pts, MetricKind::Matrix,
                               {{0, 1, 1}, {2, 0, 1}, {1, 1, 0}}),
                    ValidationError);
  }
  SUBCASE("nonzero diagonal rejected") {
    CHECK_THROWS_AS(make_space("M", pts, MetricKind::Matrix,
                               {{0.1, 1, 1}, {1, 0, 1}, {1, 1, 0}}),
                    ValidationError);
  }
  SUBCASE("triangle violation rejected") {
    CHECK_THROWS_AS(make_space("M", pts, MetricKind::Matrix,
                               {{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}),
                    ValidationError);
  }
  SUBCASE("negative entry rejected") {
    CHECK_THROWS_AS(make_space("M", pts, MetricKind::Matrix,
                               {{0, -1, 1}, {-1, 0, 1}, {1, 1, 0}}),
                    ValidationError);
  }
  SUBCASE("wrong shape rejected") {
    CHECK_THROWS_AS(
        make_space("M", pts, MetricKind::Matrix, {{0, 1}, {1, 0}}),
        ValidationError);
  }
}

TEST_CASE("product space sums axis distances and resolves names") {
  ProductSpace space({make_real_axis("X", {0.0, 1.0}),
                      make_discrete_axis("Y", {"u", "v"})});
  CHECK(space.arity() == 2);
  CHECK(space.axis_index("Y") == 1);
  CHECK(space.axis_index("Z") == -1);
  CHECK(space.distance({0, 0}, {1, 1}) == doctest::Approx(2.0));
  CHECK(space.distance({0, 0}, {1, 0}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(ProductSpace({make_real_axis("X", {0.0}),
                                make_real_axis("X", {1.0})}),
                  ValidationError);
}

TEST_CASE("same_structure distinguishes name, ids, kind and geometry") {
  const SpacePtr a = make_real_axis("X", {0.0, 1.0});
  CHECK(a->same_structure(*make_real_axis("X", {0.0, 1.0})));
  CHECK_FALSE(a->same_structure(*make_real_axis("Y", {0.0, 1.0})));
  CHECK_FALSE(a->same_structure(*make_real_axis("X", {0.0, 2.0})));
  CHECK_FALSE(a->same_structure(*make_discrete_axis("X", {"x0", "x1"})));
}
