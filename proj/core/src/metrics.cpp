#include "infotop/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>

#include "embed.hpp"
#include "flow.hpp"
#include "infotop/errors.hpp"

namespace infotop {

using detail::MergedPair;

void validate_plan(const TransportPlan& plan, double tol) {
  std::vector<double> row(plan.source.size(), 0.0), col(plan.target.size(), 0.0);
  double total = 0.0;
  for (const auto& [i, j, w] : plan.flow) {
    if (w < 0.0) throw ValidationError("transport plan has negative flow");
    if (i < 0 || i >= static_cast<int>(row.size()) || j < 0 ||
        j >= static_cast<int>(col.size()))
      throw ValidationError("transport plan references missing atoms");
    row[i] += w;
    col[j] += w;
    total += w;
  }
  for (size_t i = 0; i < row.size(); ++i)
    if (std::abs(row[i] - plan.source[i]) > tol)
      throw ValidationError("transport plan row sum differs from source weight");
  for (size_t j = 0; j < col.size(); ++j)
    if (std::abs(col[j] - plan.target[j]) > tol)
      throw ValidationError("transport plan column sum differs from target weight");
  if (std::abs(total - 1.0) > tol)
    throw ValidationError("transport plan total mass differs from 1");
}

double tv_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  const MergedPair m = detail::merge_measures(mu, nu, "tv_distance");
  std::map<std::vector<int>, double> diff;
  for (const auto& [t, w] : m.left) diff[t] += w;
  for (const auto& [t, w] : m.right) diff[t] -= w;
  double tv = 0.0;
  for (const auto& [t, d] : diff) tv += std::abs(d);
  return tv;
}

namespace {

// Per-axis candidate subsets for the default family, tagged with a coarseness
// depth so rectangles can be enumerated coarse to fine.
struct AxisSubset {
  int depth;
  bool full;
  std::vector<int> points;
};

std::vector<AxisSubset> axis_subsets(const FiniteMetricSpace& axis) {
  const int n = axis.size();
  std::vector<AxisSubset> out;
  if (n <= 12) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    out.push_back({0, true, all});
    const unsigned full_mask = (1u << n) - 1u;
    for (unsigned mask = 1; mask < full_mask; ++mask) {
      std::vector<int> pts;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) pts.push_back(i);
      out.push_back({1, false, std::move(pts)});
    }
    return out;
  }

  // Contiguous binary-split ranges over the coordinate-sorted point order.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (axis.metric() == MetricKind::Euclidean)
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return axis.point(a).coords < axis.point(b).coords;
    });
  std::function<void(int, int, int)> rec = [&](int lo, int hi, int depth) {
    std::vector<int> pts(order.begin() + lo, order.begin() + hi);
    out.push_back({depth, lo == 0 && hi == n, std::move(pts)});
    if (hi - lo >= 2) {
      const int mid = lo + (hi - lo) / 2;
      rec(lo, mid, depth + 1);
      rec(mid, hi, depth + 1);
    }
  };
  rec(0, n, 0);
  std::stable_sort(out.begin(), out.end(),
                   [](const AxisSubset& a, const AxisSubset& b) {
                     return a.depth < b.depth;
                   });
  return out;
}

}  // namespace

SetFamily default_set_family(const ProductSpace& space, int cap) {
  const int arity = space.arity();
  std::vector<std::vector<AxisSubset>> per_axis;
  int max_total = 0;
  for (int k = 0; k < arity; ++k) {
    per_axis.push_back(axis_subsets(space.axis(k)));
    max_total += per_axis.back().back().depth;
  }

  SetFamily family;
  std::vector<const AxisSubset*> chosen(arity);
  std::function<void(int, int)> rec = [&](int k, int budget) {
    if (static_cast<int>(family.size()) >= cap) return;
    if (k == arity) {
      if (budget != 0) return;
      SetDesc s;
      char buf[16];
      std::snprintf(buf, sizeof buf, "s%04zu", family.size());
      s.name = buf;
      SetRect rect;
      for (int a = 0; a < arity; ++a) {
        if (chosen[a]->full) continue;  // omitted axis means all points
        auto& ids = rect.per_axis[space.axis(a).name()];
        for (int p : chosen[a]->points) ids.push_back(space.axis(a).point(p).id);
      }
      s.rects.push_back(std::move(rect));
      family.push_back(std::move(s));
      return;
    }
    for (const auto& sub : per_axis[k]) {
      if (sub.depth > budget) break;  // sorted by depth
      chosen[k] = &sub;
      rec(k + 1, budget - sub.depth);
      if (static_cast<int>(family.size()) >= cap) return;
    }
  };
  for (int total = 0; total <= max_total; ++total) {
    rec(0, total);
    if (static_cast<int>(family.size()) >= cap) break;
  }
  return family;
}

namespace {

double set_mass(const DiscreteMeasure& m, const SetDesc& s,
                const std::vector<std::map<std::string, int>>& id_index) {
  const int arity = m.space().arity();

  // Rect masks: allowed[r][axis] as a byte mask, empty vector = all allowed.
  std::vector<std::vector<std::vector<char>>> allowed;
  for (const auto& rect : s.rects) {
    std::vector<std::vector<char>> masks(arity);
    for (const auto& [axis_name, ids] : rect.per_axis) {
      const int k = m.space().axis_index(axis_name);
      if (k < 0)
        throw ValidationError("set '" + s.name + "' references unknown axis '" +
                              axis_name + "'");
      masks[k].assign(m.space().axis(k).size(), 0);
      for (const auto& id : ids) {
        auto it = id_index[k].find(id);
        if (it == id_index[k].end())
          throw ValidationError("set '" + s.name + "' references unknown point '" +
                                id + "' on axis '" + axis_name + "'");
        masks[k][it->second] = 1;
      }
    }
    allowed.push_back(std::move(masks));
  }

  std::set<std::vector<int>> listed;
  for (const auto& atom_ids : s.atoms) {
    if (static_cast<int>(atom_ids.size()) != arity)
      throw ValidationError("set '" + s.name + "' lists an atom with wrong arity");
    std::vector<int> t(arity);
    for (int k = 0; k < arity; ++k) {
      auto it = id_index[k].find(atom_ids[k]);
      if (it == id_index[k].end())
        throw ValidationError("set '" + s.name + "' references unknown point '" +
                              atom_ids[k] + "'");
      t[k] = it->second;
    }
    listed.insert(std::move(t));
  }

  double mass = 0.0;
  for (const auto& [t, w] : m.atoms()) {
    bool inside = listed.count(t) > 0;
    for (size_t r = 0; !inside && r < allowed.size(); ++r) {
      inside = true;
      for (int k = 0; k < arity && inside; ++k)
        if (!allowed[r][k].empty() && !allowed[r][k][t[k]]) inside = false;
    }
    if (inside) mass += w;
  }
  return mass;
}

std::vector<std::map<std::string, int>> build_id_index(const DiscreteMeasure& m) {
  std::vector<std::map<std::string, int>> out(m.space().arity());
  for (int k = 0; k < m.space().arity(); ++k)
    for (int i = 0; i < m.space().axis(k).size(); ++i)
      out[k][m.space().axis(k).point(i).id] = i;
  return out;
}

}  // namespace

double setwise_gap(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                   const SetFamily& family) {
  if (mu.space().axis_names() != nu.space().axis_names())
    throw ValidationError("setwise_gap: measures have different axes");
  const auto idx_mu = build_id_index(mu);
  const auto idx_nu = build_id_index(nu);
  double gap = 0.0;
  for (const auto& s : family)
    gap = std::max(gap,
                   std::abs(set_mass(mu, s, idx_mu) - set_mass(nu, s, idx_nu)));
  return gap;
}

std::pair<double, TransportPlan> wasserstein1(const DiscreteMeasure& mu,
                                              const DiscreteMeasure& nu,
                                              const GroundMetric& ground) {
  const MergedPair m = detail::merge_measures(mu, nu, "wasserstein1");
  std::vector<double> supply, demand;
  supply.reserve(m.left.size());
  demand.reserve(m.right.size());
  for (const auto& [t, w] : m.left) supply.push_back(w);
  for (const auto& [t, w] : m.right) demand.push_back(w);

  std::function<double(int, int)> cost;
  if (ground.override_matrix) {
    const auto& mat = *ground.override_matrix;
    if (mat.size() != m.left.size() ||
        (mat.size() && mat[0].size() != m.right.size()))
      throw ValidationError("wasserstein1: override matrix shape mismatch");
    cost = [&mat](int i, int j) { return mat[i][j]; };
  } else if (ground.mode == GroundMode::RawSum) {
    cost = [&m](int i, int j) {
      return m.raw_distance(m.left[i].first, m.right[j].first);
    };
  } else {
    cost = [&m](int i, int j) {
      return m.truncated_distance(m.left[i].first, m.right[j].first);
    };
  }

  const auto sol = detail::solve_transport(supply, demand, cost);
  TransportPlan plan;
  plan.source = std::move(supply);
  plan.target = std::move(demand);
  plan.flow = sol.flow;
  return {sol.cost, std::move(plan)};
}

double prohorov(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  const MergedPair m = detail::merge_measures(mu, nu, "prohorov");
  std::vector<double> supply, demand;
  for (const auto& [t, w] : m.left) supply.push_back(w);
  for (const auto& [t, w] : m.right) demand.push_back(w);
  return detail::prohorov_value(supply, demand, [&m](int i, int j) {
    return m.raw_distance(m.left[i].first, m.right[j].first);
  });
}

}  // namespace infotop
