#pragma once

#include <utility>
#include <vector>

#include "infotop/measure.hpp"

namespace infotop::detail {

// Merge of two same-named axes onto one point list: euclidean axes match
// points by exact coordinates, discrete axes by id, matrix axes must be the
// same space structurally. Distances on the merged axis come from the ambient
// coordinates (or the shared matrix).
struct MergedAxis {
  SpacePtr space;
  std::vector<int> left_map;   // left point index -> merged index
  std::vector<int> right_map;  // right point index -> merged index
};

MergedAxis merge_axis(const SpacePtr& left, const SpacePtr& right,
                      const char* what);

// Two measures re-expressed over merged axes. Axis counts and names must
// match in order.
struct MergedPair {
  std::vector<MergedAxis> axes;
  std::vector<std::pair<std::vector<int>, double>> left, right;

  double axis_distance(int k, int i, int j) const {
    return axes[k].space->distance(i, j);
  }
  double raw_distance(const std::vector<int>& s, const std::vector<int>& t) const;
  double truncated_distance(const std::vector<int>& s,
                            const std::vector<int>& t) const;
};

MergedPair merge_measures(const DiscreteMeasure& a, const DiscreteMeasure& b,
                          const char* what);

}  // namespace infotop::detail
