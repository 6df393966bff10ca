#include "flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace infotop::detail {

namespace {

constexpr double kMassEps = 1e-15;  // below this, remaining mass counts as zero
constexpr double kCostEps = 1e-12;  // reduced-cost admissibility slack
constexpr double kInf = std::numeric_limits<double>::infinity();

// Sparse bipartite flow with a per-target list of sources that ever carried
// flow, for walking residual arcs backwards.
struct FlowState {
  int m, n;
  std::map<std::pair<int, int>, double> f;
  std::vector<std::vector<int>> by_target;

  FlowState(int m_, int n_) : m(m_), n(n_), by_target(n_) {}

  double get(int i, int j) const {
    auto it = f.find({i, j});
    return it == f.end() ? 0.0 : it->second;
  }

  void add(int i, int j, double d) {
    double& v = f[{i, j}];
    if (v == 0.0 && d > 0.0) by_target[j].push_back(i);
    v += d;
    if (v < kMassEps) v = 0.0;
  }
};

// Push mass along shortest augmenting paths through arcs admitted by `fwd`
// until no source with remaining supply reaches a target with remaining
// demand. Node order is ascending, so the flow pattern is deterministic.
double saturate(std::vector<double>& rem_s, std::vector<double>& rem_t,
                const std::function<bool(int, int)>& fwd, FlowState& fl) {
  const int m = fl.m, n = fl.n;
  double pushed = 0.0;

  // Greedy direct matches first; the path search below only reroutes
  // whatever greed blocked. On instances whose optimum pairs nodes up
  // one-to-one this is the whole job.
  for (int i = 0; i < m; ++i) {
    if (rem_s[i] <= kMassEps) continue;
    for (int j = 0; j < n && rem_s[i] > kMassEps; ++j) {
      if (rem_t[j] <= kMassEps || !fwd(i, j)) continue;
      const double d = std::min(rem_s[i], rem_t[j]);
      fl.add(i, j, d);
      rem_s[i] -= d;
      if (rem_s[i] < kMassEps) rem_s[i] = 0.0;
      rem_t[j] -= d;
      if (rem_t[j] < kMassEps) rem_t[j] = 0.0;
      pushed += d;
    }
  }

  std::vector<int> parent_t(n), parent_s(m);  // BFS predecessors
  for (;;) {
    // BFS layers: sources (even), targets (odd).
    std::fill(parent_t.begin(), parent_t.end(), -1);
    std::fill(parent_s.begin(), parent_s.end(), -1);
    std::queue<int> q;  // encoded: source i as i, target j as m+j
    for (int i = 0; i < m; ++i)
      if (rem_s[i] > kMassEps) {
        parent_s[i] = i;
        q.push(i);
      }
    int hit = -1;
    while (!q.empty() && hit < 0) {
      const int node = q.front();
      q.pop();
      if (node < m) {
        for (int j = 0; j < n && hit < 0; ++j) {
          if (parent_t[j] >= 0 || !fwd(node, j)) continue;
          parent_t[j] = node;
          if (rem_t[j] > kMassEps)
            hit = j;
          else
            q.push(m + j);
        }
      } else {
        const int j = node - m;
        for (int i : fl.by_target[j]) {
          if (parent_s[i] >= 0 || fl.get(i, j) <= kMassEps) continue;
          parent_s[i] = m + j;
          q.push(i);
        }
      }
    }
    if (hit < 0) return pushed;

    // Reconstruct path and find the bottleneck.
    double bott = rem_t[hit];
    for (int j = hit;;) {
      const int i = parent_t[j];
      if (parent_s[i] == i) {
        bott = std::min(bott, rem_s[i]);
        break;
      }
      const int pj = parent_s[i] - m;
      bott = std::min(bott, fl.get(i, pj));
      j = pj;
    }
    for (int j = hit;;) {
      const int i = parent_t[j];
      fl.add(i, j, bott);
      if (parent_s[i] == i) {
        rem_s[i] -= bott;
        if (rem_s[i] < kMassEps) rem_s[i] = 0.0;
        break;
      }
      const int pj = parent_s[i] - m;
      fl.add(i, pj, -bott);
      j = pj;
    }
    rem_t[hit] -= bott;
    if (rem_t[hit] < kMassEps) rem_t[hit] = 0.0;
    pushed += bott;
  }
}

}  // namespace

TransportSolution solve_transport(const std::vector<double>& supply,
                                  const std::vector<double>& demand,
                                  const std::function<double(int, int)>& cost) {
  const int m = static_cast<int>(supply.size());
  const int n = static_cast<int>(demand.size());
  double total_s = 0.0, total_t = 0.0;
  for (double w : supply) total_s += w;
  for (double w : demand) total_t += w;
  if (std::abs(total_s - total_t) > 2e-9)
    throw std::runtime_error("transport: supply and demand totals differ");

  std::vector<double> rem_s = supply, rem_t = demand;
  // Absorb normalization slack (inputs are unit measures up to rounding) so
  // the residual loop terminates instead of chasing unroutable mass.
  if (total_t > 0.0 && total_s != total_t) {
    const double scale = total_s / total_t;
    for (double& w : rem_t) w *= scale;
  }
  std::vector<double> pot(m + n, 0.0);  // node potentials, targets at m+j
  FlowState fl(m, n);

  auto reduced = [&](int i, int j) {
    return cost(i, j) + pot[i] - pot[m + j];
  };

  std::vector<double> dist(m + n);
  std::vector<char> done(m + n);
  const int max_phases = 10 * (m + n) + 100;
  int phase = 0;
  for (;; ++phase) {
    double remaining = 0.0;
    for (double w : rem_s) remaining += w;
    if (remaining <= 1e-12) break;
    if (phase >= max_phases)
      throw std::runtime_error("transport: phase limit exceeded");

    // Multi-source Dijkstra over the residual graph with reduced costs.
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(done.begin(), done.end(), 0);
    for (int i = 0; i < m; ++i)
      if (rem_s[i] > kMassEps) dist[i] = 0.0;
    for (int iter = 0; iter < m + n; ++iter) {
      int u = -1;
      double best = kInf;
      for (int v = 0; v < m + n; ++v)
        if (!done[v] && dist[v] < best) {
          best = dist[v];
          u = v;
        }
      if (u < 0) break;
      done[u] = 1;
      // Labels are finalized in ascending order, so the first demanded
      // target to come out already carries the phase's step size; stale
      // labels elsewhere are >= it and get clamped by the potential update.
      if (u >= m && rem_t[u - m] > kMassEps) break;
      if (u < m) {
        for (int j = 0; j < n; ++j) {
          if (done[m + j]) continue;
          const double rc = std::max(0.0, reduced(u, j));
          if (dist[u] + rc < dist[m + j]) dist[m + j] = dist[u] + rc;
        }
      } else {
        const int j = u - m;
        for (int i : fl.by_target[j]) {
          if (done[i] || fl.get(i, j) <= kMassEps) continue;
          const double rc = std::max(0.0, -reduced(i, j));
          if (dist[u] + rc < dist[i]) dist[i] = dist[u] + rc;
        }
      }
    }

    double dmin = kInf;
    for (int j = 0; j < n; ++j)
      if (rem_t[j] > kMassEps) dmin = std::min(dmin, dist[m + j]);
    if (dmin == kInf)
      throw std::runtime_error("transport: no augmenting path (unbalanced?)");

    for (int v = 0; v < m + n; ++v) pot[v] += std::min(dist[v], dmin);

    // Saturate the admissible arcs this tier opened up.
    auto admissible = [&](int i, int j) { return reduced(i, j) <= kCostEps; };
    saturate(rem_s, rem_t, admissible, fl);
  }

  TransportSolution out;
  for (const auto& [ij, v] : fl.f) {
    if (v <= kMassEps) continue;
    out.flow.emplace_back(ij.first, ij.second, v);
    out.cost += v * cost(ij.first, ij.second);
  }
  return out;
}

double bipartite_matchable_mass(const std::vector<double>& supply,
                                const std::vector<double>& demand,
                                const std::function<bool(int, int)>& allowed) {
  const int m = static_cast<int>(supply.size());
  const int n = static_cast<int>(demand.size());
  std::vector<double> rem_s = supply, rem_t = demand;
  FlowState fl(m, n);
  return saturate(rem_s, rem_t, allowed, fl);
}

double prohorov_value(const std::vector<double>& supply,
                      const std::vector<double>& demand,
                      const std::function<double(int, int)>& dist) {
  const int m = static_cast<int>(supply.size());
  const int n = static_cast<int>(demand.size());

  std::set<double> breakpoints{0.0};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) breakpoints.insert(dist(i, j));

  auto matchable = [&](double alpha) {
    return bipartite_matchable_mass(supply, demand, [&](int i, int j) {
      return dist(i, j) <= alpha + 1e-15;
    });
  };

  // On each interval between consecutive breakpoints the matchable mass F is
  // constant, so the best alpha there is max(breakpoint, 1 - F): either the
  // distance threshold binds or the flow deficit does.
  double best = 1.0;  // alpha = 1 is always feasible (deficit <= mass <= 1)
  for (double a : breakpoints) {
    if (a >= best) break;
    const double deficit = 1.0 - matchable(a);
    best = std::min(best, std::max(a, deficit));
  }

  // Confirming bisection: feasibility (deficit <= alpha) is monotone in
  // alpha, so this can only tighten the closed-form value.
  double lo = 0.0, hi = best;
  if (1.0 - matchable(0.0) <= 0.0) return 0.0;
  for (int it = 0; it < 35 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (1.0 - matchable(mid) <= mid)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace infotop::detail
