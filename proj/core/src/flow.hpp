#pragma once

#include <functional>
#include <tuple>
#include <vector>

namespace infotop::detail {

struct TransportSolution {
  double cost = 0.0;
  // (source index, target index, mass), lexicographically ordered.
  std::vector<std::tuple<int, int, double>> flow;
};

// Exact uncapacitated transportation problem: minimize sum of
// flow(i,j)*cost(i,j) subject to row sums = supply, column sums = demand.
// Totals must agree within 1e-9; costs must be nonnegative and finite.
// Successive-shortest-path with node potentials; each phase runs one
// multi-source Dijkstra and then saturates the zero-reduced-cost subgraph, so
// instances whose optimum lies on a single shortest tier finish in one phase.
// Augmenting paths are explored in ascending (source, target) index order,
// which pins down the returned plan across runs.
TransportSolution solve_transport(const std::vector<double>& supply,
                                  const std::vector<double>& demand,
                                  const std::function<double(int, int)>& cost);

// Largest total mass routable from supplies to demands using only allowed
// pairs (uncapacitated edges, node capacities = supply/demand). Shortest
// augmenting paths, deterministic scan order.
double bipartite_matchable_mass(const std::vector<double>& supply,
                                const std::vector<double>& demand,
                                const std::function<bool(int, int)>& allowed);

// Exact Prohorov distance between weighted supports with ground distance
// `dist`: the smallest alpha admitting a coupling with mass at most alpha on
// pairs farther than alpha. Breakpoint scan over the sorted pairwise
// distances and the flow-deficit values, confirmed by bisection.
double prohorov_value(const std::vector<double>& supply,
                      const std::vector<double>& demand,
                      const std::function<double(int, int)>& dist);

}  // namespace infotop::detail
