#pragma once

#include <vector>

namespace infotop::detail {

struct LpResult {
  bool feasible = false;
  double value = 0.0;
  std::vector<double> x;
};

// Minimize c.x subject to A x = b, x >= 0, with b >= 0. Dense two-phase
// tableau simplex with Bland's rule, adequate for the small cross-validation
// programs this library solves.
LpResult solve_lp_min(const std::vector<std::vector<double>>& A,
                      const std::vector<double>& b,
                      const std::vector<double>& c);

}  // namespace infotop::detail
