#pragma once

#include <string>
#include <vector>

#include "infotop/convergence.hpp"
#include "infotop/decision.hpp"
#include "infotop/fixtures.hpp"
#include "infotop/lift.hpp"
#include "infotop/measure.hpp"
#include "infotop/metrics.hpp"

namespace infotop {

// JSON document layer. Output is deterministic: object keys sorted, atoms in
// lexicographic point-id order, weights with 17 significant digits so round
// trips are bit-exact. Parse failures (bad syntax or wrong shape) throw
// ValidationError; syntax errors keep the line/column of the underlying
// parser.

std::string serialize_measure(const DiscreteMeasure& m);
DiscreteMeasure parse_measure(const std::string& text);

std::string serialize_lifted(const LiftedMeasure& m);
LiftedMeasure parse_lifted(const std::string& text);

std::string serialize_sets(const SetFamily& family);
SetFamily parse_sets(const std::string& text);

DecisionProblem parse_problem(const std::string& text);

// External measure sequence: explicit members per index plus the limit.
struct SequenceDoc {
  std::vector<int> indices;
  std::vector<DiscreteMeasure> members;
  DiscreteMeasure limit;
};
SequenceDoc parse_sequence(const std::string& text);

std::string serialize_report(const ConvergenceReport& r);
std::string serialize_density(const DensityReport& r);
std::string serialize_kernel(const KernelReport& r);
std::string serialize_solve(const SolveResult& r);
std::string serialize_record(const FixtureRecord& r);

// One document holding every object the named fixture generates at the given
// parameters, keyed by member name (mu_n, nu, glued, ...). n is ignored by
// fixtures without a running index; K and cap apply to rademacher and jordan.
std::string serialize_fixture_bundle(const std::string& name, int n, int K,
                                     int cap);

// Scalar formatting used for console numbers: 12 significant digits.
std::string format_scalar(double v);

}  // namespace infotop
