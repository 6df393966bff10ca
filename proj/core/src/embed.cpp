#include "embed.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "infotop/errors.hpp"

namespace infotop::detail {

MergedAxis merge_axis(const SpacePtr& left, const SpacePtr& right,
                      const char* what) {
  if (left->name() != right->name())
    throw ValidationError(std::string(what) + ": axis names differ ('" +
                          left->name() + "' vs '" + right->name() + "')");
  if (left->metric() != right->metric())
    throw ValidationError(std::string(what) + ": axis '" + left->name() +
                          "' has different metric kinds");

  MergedAxis out;
  if (left->same_structure(*right) || left.get() == right.get()) {
    out.space = left;
    out.left_map.resize(left->size());
    out.right_map.resize(right->size());
    for (int i = 0; i < left->size(); ++i) out.left_map[i] = i;
    for (int i = 0; i < right->size(); ++i) out.right_map[i] = i;
    return out;
  }

  switch (left->metric()) {
    case MetricKind::Matrix:
      throw ValidationError(std::string(what) + ": explicit-matrix axis '" +
                            left->name() +
                            "' must be one shared space in both measures");
    case MetricKind::Euclidean: {
      std::vector<SpacePoint> pts = left->points();
      std::map<std::vector<double>, int> by_coords;
      std::set<std::string> ids;
      for (int i = 0; i < left->size(); ++i) {
        by_coords[pts[i].coords] = i;
        ids.insert(pts[i].id);
      }
      out.left_map.resize(left->size());
      for (int i = 0; i < left->size(); ++i) out.left_map[i] = i;
      out.right_map.resize(right->size());
      for (int i = 0; i < right->size(); ++i) {
        const auto& p = right->point(i);
        auto it = by_coords.find(p.coords);
        if (it != by_coords.end()) {
          out.right_map[i] = it->second;
          continue;
        }
        SpacePoint np = p;
        while (ids.count(np.id)) np.id += "'";  // avoid id clashes
        ids.insert(np.id);
        by_coords[np.coords] = static_cast<int>(pts.size());
        out.right_map[i] = static_cast<int>(pts.size());
        pts.push_back(std::move(np));
      }
      out.space = make_space(left->name(), std::move(pts), MetricKind::Euclidean);
      return out;
    }
    case MetricKind::Discrete: {
      std::vector<SpacePoint> pts = left->points();
      std::map<std::string, int> by_id;
      for (int i = 0; i < left->size(); ++i) by_id[pts[i].id] = i;
      out.left_map.resize(left->size());
      for (int i = 0; i < left->size(); ++i) out.left_map[i] = i;
      out.right_map.resize(right->size());
      for (int i = 0; i < right->size(); ++i) {
        const auto& p = right->point(i);
        auto it = by_id.find(p.id);
        if (it != by_id.end()) {
          out.right_map[i] = it->second;
        } else {
          by_id[p.id] = static_cast<int>(pts.size());
          out.right_map[i] = static_cast<int>(pts.size());
          pts.push_back(p);
        }
      }
      out.space = make_space(left->name(), std::move(pts), MetricKind::Discrete);
      return out;
    }
  }
  throw ValidationError("unreachable metric kind");
}

double MergedPair::raw_distance(const std::vector<int>& s,
                                const std::vector<int>& t) const {
  double d = 0.0;
  for (size_t k = 0; k < axes.size(); ++k) d += axis_distance(static_cast<int>(k), s[k], t[k]);
  return d;
}

double MergedPair::truncated_distance(const std::vector<int>& s,
                                      const std::vector<int>& t) const {
  double d = 0.0;
  for (size_t k = 0; k < axes.size(); ++k)
    d += std::min(axis_distance(static_cast<int>(k), s[k], t[k]), 1.0);
  return d;
}

MergedPair merge_measures(const DiscreteMeasure& a, const DiscreteMeasure& b,
                          const char* what) {
  if (a.space().arity() != b.space().arity())
    throw ValidationError(std::string(what) + ": axis counts differ");
  MergedPair out;
  for (int k = 0; k < a.space().arity(); ++k)
    out.axes.push_back(merge_axis(a.space().axis_ptr(k), b.space().axis_ptr(k), what));

  auto remap = [&](const DiscreteMeasure& m, bool is_left) {
    std::vector<std::pair<std::vector<int>, double>> atoms;
    atoms.reserve(m.size());
    for (const auto& [t, w] : m.atoms()) {
      std::vector<int> nt(t.size());
      for (size_t k = 0; k < t.size(); ++k)
        nt[k] = is_left ? out.axes[k].left_map[t[k]] : out.axes[k].right_map[t[k]];
      atoms.emplace_back(std::move(nt), w);
    }
    return atoms;
  };
  out.left = remap(a, true);
  out.right = remap(b, false);
  return out;
}

}  // namespace infotop::detail
