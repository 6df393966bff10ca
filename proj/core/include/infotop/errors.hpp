#pragma once

#include <stdexcept>
#include <string>

namespace infotop {

// Bad inputs: unknown axes or points, malformed documents, weights that do not
// sum to one, strategy domains that do not match a prior.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Two measures that were required to share a marginal do not. Carries the
// measured total-variation gap so callers can report how far off they were.
struct ConsistencyError : std::runtime_error {
  double gap;
  ConsistencyError(const std::string& what, double gap_)
      : std::runtime_error(what), gap(gap_) {}
};

}  // namespace infotop
