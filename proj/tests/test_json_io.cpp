#include <random>
#include <string>

#include "doctest.h"
#include "infotop/convergence.hpp"
#include "infotop/errors.hpp"
#include "infotop/fixtures.hpp"
#include "infotop/json_io.hpp"
#include "infotop/lift.hpp"
#include "infotop/measure.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace infotop;

TEST_CASE("measure documents round trip bit-exactly") {
  std::mt19937_64 rng(4001);
  for (int trial = 0; trial < 30; ++trial) {
    ProductSpace space(
        {testor::rand_axis(rng, "A", 4), testor::rand_axis(rng, "B", 4)});
    const DiscreteMeasure m = testor::rand_measure(rng, space);
    const std::string text = serialize_measure(m);
    const DiscreteMeasure back = parse_measure(text);
    REQUIRE(back.space().arity() == m.space().arity());
    for (int k = 0; k < m.space().arity(); ++k)
      CHECK(back.space().axis(k).same_structure(m.space().axis(k)));
    CHECK(testor::oracle_tv(back, m) == 0.0);
    CHECK(serialize_measure(back) == text);
  }
}

TEST_CASE("atoms serialize in lexicographic point-id order") {
  ProductSpace space({make_discrete_axis("A", {"z", "a"})});
  const DiscreteMeasure m(space, {{{0}, 0.25}, {{1}, 0.75}});
  const std::string text = serialize_measure(m);
  CHECK(text.find("\"a\"") < text.find("\"z\""));
}

TEST_CASE("measure parse errors carry context") {
  auto message_of = [](const std::string& text) -> std::string {
    try {
      parse_measure(text);
    } catch (const ValidationError& e) {
      return e.what();
    }
    return "";
  };
  SUBCASE("syntax errors keep the parser position") {
    const std::string msg = message_of("{\"atoms\": [");
    CHECK(msg.find("line") != std::string::npos);
  }
  SUBCASE("missing key") {
    CHECK(message_of("{}").find("space") != std::string::npos);
  }
  SUBCASE("unknown point id") {
    ProductSpace space({make_discrete_axis("A", {"a0"})});
    std::string text = serialize_measure(DiscreteMeasure(space, {{{0}, 1.0}}));
    const auto at = text.find("\"a0\"");
    text.replace(at, 4, "\"qq\"");
    CHECK(message_of(text).find("unknown point") != std::string::npos);
  }
  SUBCASE("bad metric name") {
    CHECK(message_of("{\"spaces\": [{\"name\": \"A\", \"points\": "
                     "[{\"id\": \"a\"}], \"metric\": \"hyperbolic\"}], "
                     "\"atoms\": [{\"point\": [\"a\"], \"weight\": 1.0}]}")
              .find("unknown metric 'hyperbolic'") != std::string::npos);
  }
  SUBCASE("duplicate atom") {
    CHECK(message_of("{\"spaces\": [{\"name\": \"A\", \"points\": "
                     "[{\"id\": \"a\"}, {\"id\": \"b\"}], \"metric\": "
                     "\"discrete\"}], \"atoms\": ["
                     "{\"point\": [\"a\"], \"weight\": 0.5}, "
                     "{\"point\": [\"a\"], \"weight\": 0.5}]}")
              .find("duplicate") != std::string::npos);
  }
  SUBCASE("wrong arity") {
    CHECK(message_of("{\"spaces\": [{\"name\": \"A\", \"points\": "
                     "[{\"id\": \"a\"}], \"metric\": \"discrete\"}], "
                     "\"atoms\": [{\"point\": [\"a\", \"a\"], \"weight\": "
                     "1.0}]}")
              .find("expected 1 ids, got 2") != std::string::npos);
  }
}

TEST_CASE("lifted documents round trip through psi and the glue") {
  std::mt19937_64 rng(4002);
  for (int trial = 0; trial < 10; ++trial) {
    ProductSpace space(
        {testor::rand_axis(rng, "A", 3), testor::rand_axis(rng, "B", 3)});
    const LiftedMeasure lifted = psi(testor::rand_measure(rng, space));
    const std::string text = serialize_lifted(lifted);
    const LiftedMeasure back = parse_lifted(text);
    CHECK(back.functional() == lifted.functional());
    CHECK(back.inner_metric() == lifted.inner_metric());
    CHECK(serialize_lifted(back) == text);
    CHECK(max_atom_gap(psi_inv(back), psi_inv(lifted)) == 0.0);
  }
  SUBCASE("an extras-bearing document keeps its trailing axes") {
    const HellwigFixture h = fixture_hellwig();
    const std::string text = serialize_lifted(h.glued);
    const LiftedMeasure back = parse_lifted(text);
    REQUIRE(back.extra_spaces().size() == 1);
    CHECK(serialize_lifted(back) == text);
    CHECK(max_atom_gap(chi2_flatten(back), chi2_flatten(h.glued)) == 0.0);
  }
}

TEST_CASE("set family documents round trip") {
  ProductSpace space({make_discrete_axis("A", {"a0", "a1"}),
                      make_discrete_axis("B", {"b0", "b1"})});
  const SetFamily family = default_set_family(space, 64);
  const std::string text = serialize_sets(family);
  const SetFamily back = parse_sets(text);
  REQUIRE(back.size() == family.size());
  for (size_t i = 0; i < family.size(); ++i) {
    CHECK(back[i].name == family[i].name);
    CHECK(back[i].rects.size() == family[i].rects.size());
    CHECK(back[i].atoms == family[i].atoms);
  }
  CHECK(serialize_sets(back) == text);
}

TEST_CASE("problem documents parse and validate") {
  const std::string text = R"({
    "prior": {
      "spaces": [
        {"name": "A", "points": [{"id": "a0"}, {"id": "a1"}], "metric": "discrete"},
        {"name": "B", "points": [{"id": "b0"}], "metric": "discrete"}
      ],
      "atoms": [
        {"point": ["a0", "b0"], "weight": 0.5},
        {"point": ["a1", "b0"], "weight": 0.5}
      ]
    },
    "actions": {"name": "C", "points": [{"id": "c0"}, {"id": "c1"}], "metric": "discrete"},
    "cost": [
      {"point": ["a0", "b0", "c0"], "value": 1.0},
      {"point": ["a0", "b0", "c1"], "value": 0.0},
      {"point": ["a1", "b0", "c0"], "value": 0.0},
      {"point": ["a1", "b0", "c1"], "value": 2.0}
    ]
  })";
  const DecisionProblem p = parse_problem(text);
  CHECK(p.prior.size() == 2);
  CHECK(p.actions->size() == 2);
  CHECK(p.cost.size() == 4);
  CHECK(solve_randomized(p).value == doctest::Approx(0.0));

  SUBCASE("duplicate cost entries rejected") {
    std::string dup = text;
    const std::string entry = "{\"point\": [\"a0\", \"b0\", \"c0\"], \"value\": 1.0},";
    dup.insert(dup.find("{\"point\": [\"a0\""), entry);
    CHECK_THROWS_AS(parse_problem(dup), ValidationError);
  }
  SUBCASE("missing cost entry rejected by validation") {
    std::string holed = text;
    const auto at = holed.find("      {\"point\": [\"a1\", \"b0\", \"c0\"], \"value\": 0.0},\n");
    REQUIRE(at != std::string::npos);
    holed.erase(at, holed.find("{\"point\": [\"a1\", \"b0\", \"c1\"]") - at);
    CHECK_THROWS_AS(parse_problem(holed), ValidationError);
  }
}

TEST_CASE("sequence documents parse members against their indices") {
  ProductSpace space({make_discrete_axis("P", {"p0", "p1"})});
  const DiscreteMeasure a(space, {{{0}, 1.0}});
  const DiscreteMeasure b(space, {{{0}, 0.5}, {{1}, 0.5}});
  const std::string ma = serialize_measure(a);
  const std::string mb = serialize_measure(b);
  const std::string text = "{\"indices\": [1, 2], \"members\": [" + ma + "," +
                           mb + "], \"limit\": " + ma + "}";
  const SequenceDoc doc = parse_sequence(text);
  CHECK(doc.indices == std::vector<int>{1, 2});
  REQUIRE(doc.members.size() == 2);
  CHECK(testor::oracle_tv(doc.members[1], b) == 0.0);
  CHECK(testor::oracle_tv(doc.limit, a) == 0.0);

  const std::string skewed = "{\"indices\": [1], \"members\": [" + ma + "," +
                             mb + "], \"limit\": " + ma + "}";
  CHECK_THROWS_AS(parse_sequence(skewed), ValidationError);
}

TEST_CASE("emitted reports are well-formed json with the expected keys") {
  MeasureSequence seq{{1, 2, 3},
                      [](int n) { return fixture_jordan(n).first; },
                      fixture_jordan(1).second};
  SUBCASE("convergence report") {
    const ConvergenceReport r =
        analyze(seq, {MetricId::W1, MetricId::Info});
    const auto doc = nlohmann::json::parse(serialize_report(r));
    REQUIRE(doc.contains("metrics"));
    REQUIRE(doc["metrics"].size() == 2);
    CHECK(doc["metrics"][0]["metric"] == "w1");
    CHECK(doc["metrics"][1]["metric"] == "info");
    CHECK(doc["metrics"][0]["trace"].size() == 3);
    CHECK(doc["metrics"][0]["trace"][0].contains("index"));
    CHECK(doc["metrics"][0]["trace"][0].contains("distance"));
    CHECK(doc["params"]["tol_conv"] == 0.01);
    CHECK(doc["params"]["ground"] == "truncated");
  }
  SUBCASE("density report") {
    const auto doc =
        nlohmann::json::parse(serialize_density(density_criterion(seq)));
    CHECK(doc["verdict"] == "inapplicable");
    CHECK(doc.contains("explanation"));
    CHECK(doc.contains("sup_trace"));
  }
  SUBCASE("kernel report") {
    const auto doc =
        nlohmann::json::parse(serialize_kernel(kernel_criterion(seq)));
    CHECK(doc["verdict"] == "violated");
    REQUIRE(doc["traces"].size() == 1);
    CHECK(doc["traces"][0].contains("x"));
    CHECK(doc["traces"][0]["trace"].size() == 3);
  }
  SUBCASE("fixture record") {
    const auto doc =
        nlohmann::json::parse(serialize_record(verify_fixture("hellwig")));
    CHECK(doc["fixture"] == "hellwig");
    for (const auto& c : doc["checks"]) {
      CHECK(c["pass"] == true);
      CHECK((c["kind"] == "two-sided" || c["kind"] == "upper-bound"));
    }
  }
}

TEST_CASE("solve output carries both strategies") {
  ProductSpace space({make_discrete_axis("A", {"a0"}),
                      make_discrete_axis("B", {"b0", "b1"})});
  DecisionProblem p{DiscreteMeasure(space, {{{0, 0}, 0.5}, {{0, 1}, 0.5}}),
                    make_discrete_axis("C", {"c0", "c1"}),
                    {{{"a0", "b0", "c0"}, 1.0},
                     {{"a0", "b1", "c0"}, 0.0},
                     {{"a0", "b0", "c1"}, 0.0},
                     {{"a0", "b1", "c1"}, 1.0}}};
  const auto doc = nlohmann::json::parse(serialize_solve(solve_randomized(p)));
  CHECK(doc["value"] == 0.5);
  CHECK(doc["deterministic"]["a0"] == "c0");
  CHECK(doc["randomized"]["a0"]["c0"] == 0.5);
  CHECK(doc["randomized"]["a0"]["c1"] == 0.5);
}

TEST_CASE("fixture bundles expose the advertised members") {
  const auto sgn = nlohmann::json::parse(serialize_fixture_bundle("sgn", 3, 0, 0));
  CHECK(sgn.contains("mu_n"));
  CHECK(sgn.contains("mu_0"));
  const auto hw = nlohmann::json::parse(
      serialize_fixture_bundle("hellwig", 0, 0, 0));
  for (const char* key : {"nu", "mu", "glued", "lhs", "rhs"})
    CHECK(hw.contains(key));
  CHECK(hw["lhs"] == 0.25);
  CHECK_THROWS_AS(serialize_fixture_bundle("nope", 1, 1, 1), ValidationError);
}

TEST_CASE("format_scalar prints twelve significant digits") {
  CHECK(format_scalar(2.0 / 3.0) == "0.666666666667");
  CHECK(format_scalar(2.0) == "2");
  CHECK(format_scalar(0.25) == "0.25");
}
