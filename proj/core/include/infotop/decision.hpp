#pragma once

#include <map>
#include <string>

#include "infotop/lift.hpp"
#include "infotop/measure.hpp"

namespace infotop {

// Static decision problem: observe a, pick an action from the finite space C,
// pay c(a, b, c) against the unknown state b. The prior couples observations
// (first axis) and states (second axis); the cost table must cover every
// prior-support pair combined with every action.
struct DecisionProblem {
  DiscreteMeasure prior;
  SpacePtr actions;
  CostTable cost;
};

// Action choice per observation id; domain must be exactly the support of the
// observation marginal.
struct DeterministicStrategy {
  std::map<std::string, std::string> choice;
};

// Probability row over action ids per observation id; same domain rule.
struct RandomizedStrategy {
  std::map<std::string, std::map<std::string, double>> rows;
};

void validate_problem(const DecisionProblem& p);

double evaluate(const DecisionProblem& p, const DeterministicStrategy& s);
double evaluate(const DecisionProblem& p, const RandomizedStrategy& s);

// Joint over observations x actions induced by a randomized strategy:
// weight(a, c) = prior^A(a) * row_a(c).
DiscreteMeasure induced_joint(const DecisionProblem& p,
                              const RandomizedStrategy& r);

enum class SolveMethod {
  Decompose,  // exact per-observation minimization (the default)
  Lp          // one simplex solve over all rows, kept for cross-validation
};

struct SolveResult {
  double value;
  RandomizedStrategy randomized;
  DeterministicStrategy deterministic;
};

// Optimal randomized strategy. The relaxed problem separates across
// observation atoms; each subproblem is a minimum over actions of the
// partial expected cost, with the returned row uniform over the argmin set
// (ties within 1e-12). The Lp method solves the equivalent linear program
// instead and must agree. The reported deterministic strategy is the
// extraction below applied to the optimum, and attains the same value.
SolveResult solve_randomized(const DecisionProblem& p,
                             SolveMethod method = SolveMethod::Decompose);

// For each observation, the support of row(a) restricted to actions
// minimizing the conditional expected cost; ties broken by smallest action
// id. Never worse than the randomized strategy it came from.
DeterministicStrategy extract_deterministic(const DecisionProblem& p,
                                            const RandomizedStrategy& r);

}  // namespace infotop
