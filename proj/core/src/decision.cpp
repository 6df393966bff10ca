#include "infotop/decision.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "infotop/errors.hpp"
#include "simplex.hpp"

namespace infotop {

namespace {

constexpr double kTieTol = 1e-12;

// Support of the observation marginal, as (index, id, mass), in axis order.
struct ObservationSupport {
  std::vector<int> index;
  std::vector<std::string> id;
  std::vector<double> mass;
};

ObservationSupport observation_support(const DecisionProblem& p) {
  const auto& aaxis = p.prior.space().axis(0);
  std::map<int, double> mx;
  for (const auto& [t, w] : p.prior.atoms()) mx[t[0]] += w;
  ObservationSupport s;
  for (const auto& [a, w] : mx) {
    s.index.push_back(a);
    s.id.push_back(aaxis.point(a).id);
    s.mass.push_back(w);
  }
  return s;
}

double cost_at(const DecisionProblem& p, const std::string& a,
               const std::string& b, const std::string& c) {
  const auto it = p.cost.find({a, b, c});
  if (it == p.cost.end())
    throw ValidationError("cost table has no entry at (" + a + ", " + b + ", " +
                          c + ")");
  if (it->second < 0.0)
    throw ValidationError("cost table entry at (" + a + ", " + b + ", " + c +
                          ") is negative");
  return it->second;
}

// Partial expected costs q_a(c) = sum_b prior(a,b) cost(a,b,c), one row per
// observation support point. Everything downstream minimizes these.
std::vector<std::vector<double>> partial_costs(const DecisionProblem& p,
                                               const ObservationSupport& s) {
  const auto& sp = p.prior.space();
  std::map<int, int> apos;
  for (size_t i = 0; i < s.index.size(); ++i) apos[s.index[i]] = static_cast<int>(i);
  std::vector<std::vector<double>> q(s.index.size(),
                                     std::vector<double>(p.actions->size(), 0.0));
  for (const auto& [t, w] : p.prior.atoms()) {
    const int i = apos.at(t[0]);
    const std::string& aid = sp.axis(0).point(t[0]).id;
    const std::string& bid = sp.axis(1).point(t[1]).id;
    for (int c = 0; c < p.actions->size(); ++c)
      q[i][c] += w * cost_at(p, aid, bid, p.actions->point(c).id);
  }
  return q;
}

}  // namespace

void validate_problem(const DecisionProblem& p) {
  if (p.prior.space().arity() != 2)
    throw ValidationError("decision prior must have exactly two axes");
  if (!p.actions || p.actions->size() == 0)
    throw ValidationError("decision problem needs a nonempty action space");
  if (p.prior.space().axis_index(p.actions->name()) >= 0)
    throw ValidationError("action space name '" + p.actions->name() +
                          "' collides with a prior axis");
  // Walk all (support pair, action) combinations; cost_at rejects holes and
  // negative entries.
  const ObservationSupport s = observation_support(p);
  partial_costs(p, s);
}

double evaluate(const DecisionProblem& p, const DeterministicStrategy& s) {
  validate_problem(p);
  const ObservationSupport obs = observation_support(p);
  std::set<std::string> support(obs.id.begin(), obs.id.end());
  if (s.choice.size() != support.size())
    throw ValidationError("strategy domain does not match the prior support");
  for (const auto& [a, c] : s.choice) {
    if (!support.count(a))
      throw ValidationError("strategy maps unknown observation '" + a + "'");
    if (p.actions->index_of(c) < 0)
      throw ValidationError("strategy picks unknown action '" + c + "'");
  }
  double total = 0.0;
  const auto& sp = p.prior.space();
  for (const auto& [t, w] : p.prior.atoms()) {
    const std::string& aid = sp.axis(0).point(t[0]).id;
    total += w * cost_at(p, aid, sp.axis(1).point(t[1]).id, s.choice.at(aid));
  }
  return total;
}

DiscreteMeasure induced_joint(const DecisionProblem& p,
                              const RandomizedStrategy& r) {
  const ObservationSupport obs = observation_support(p);
  if (r.rows.size() != obs.id.size())
    throw ValidationError("strategy domain does not match the prior support");
  std::map<std::vector<int>, double> w;
  for (size_t i = 0; i < obs.id.size(); ++i) {
    const auto row = r.rows.find(obs.id[i]);
    if (row == r.rows.end())
      throw ValidationError("strategy has no row for observation '" +
                            obs.id[i] + "'");
    double mass = 0.0;
    for (const auto& [cid, q] : row->second) {
      const int c = p.actions->index_of(cid);
      if (c < 0)
        throw ValidationError("strategy row at '" + obs.id[i] +
                              "' references unknown action '" + cid + "'");
      if (q < 0.0)
        throw ValidationError("strategy row at '" + obs.id[i] +
                              "' has a negative probability");
      w[{obs.index[i], c}] += obs.mass[i] * q;
      mass += q;
    }
    if (std::abs(mass - 1.0) > 1e-9)
      throw ValidationError("strategy row at '" + obs.id[i] +
                            "' does not sum to 1");
  }
  return DiscreteMeasure(
      ProductSpace({p.prior.space().axis_ptr(0), p.actions}), std::move(w));
}

double evaluate(const DecisionProblem& p, const RandomizedStrategy& s) {
  validate_problem(p);
  const DiscreteMeasure nu = induced_joint(p, s);
  CostTable table;
  const auto& sp = p.prior.space();
  for (const auto& [t, w] : p.prior.atoms()) {
    const std::string& aid = sp.axis(0).point(t[0]).id;
    const std::string& bid = sp.axis(1).point(t[1]).id;
    for (int c = 0; c < p.actions->size(); ++c) {
      const std::string& cid = p.actions->point(c).id;
      table[{aid, bid, cid}] = cost_at(p, aid, bid, cid);
    }
  }
  return expected_cost(table, p.prior, nu);
}

namespace {

RandomizedStrategy decompose_solve(const DecisionProblem& p,
                                   const ObservationSupport& obs,
                                   const std::vector<std::vector<double>>& q) {
  RandomizedStrategy r;
  for (size_t i = 0; i < obs.id.size(); ++i) {
    const double best = *std::min_element(q[i].begin(), q[i].end());
    std::vector<int> argmin;
    for (int c = 0; c < p.actions->size(); ++c)
      if (q[i][c] <= best + kTieTol) argmin.push_back(c);
    auto& row = r.rows[obs.id[i]];
    for (int c : argmin)
      row[p.actions->point(c).id] = 1.0 / static_cast<double>(argmin.size());
  }
  return r;
}

RandomizedStrategy lp_solve(const DecisionProblem& p,
                            const ObservationSupport& obs,
                            const std::vector<std::vector<double>>& q) {
  // Variables y[i][c] = row probability, blocked per observation:
  // minimize sum q[i][c] y[i][c] subject to sum_c y[i][c] = 1 for each i.
  const int na = static_cast<int>(obs.id.size());
  const int nc = p.actions->size();
  std::vector<std::vector<double>> A(na, std::vector<double>(na * nc, 0.0));
  std::vector<double> b(na, 1.0), c(na * nc, 0.0);
  for (int i = 0; i < na; ++i)
    for (int k = 0; k < nc; ++k) {
      A[i][i * nc + k] = 1.0;
      c[i * nc + k] = q[i][k];
    }
  const detail::LpResult sol = detail::solve_lp_min(A, b, c);
  if (!sol.feasible)
    throw ValidationError("decision LP reported infeasible, which should not happen");

  RandomizedStrategy r;
  for (int i = 0; i < na; ++i) {
    auto& row = r.rows[obs.id[i]];
    double mass = 0.0;
    for (int k = 0; k < nc; ++k) mass += sol.x[i * nc + k];
    for (int k = 0; k < nc; ++k) {
      const double v = sol.x[i * nc + k] / mass;
      if (v > 1e-12) row[p.actions->point(k).id] = v;
    }
  }
  return r;
}

}  // namespace

SolveResult solve_randomized(const DecisionProblem& p, SolveMethod method) {
  validate_problem(p);
  const ObservationSupport obs = observation_support(p);
  const std::vector<std::vector<double>> q = partial_costs(p, obs);

  RandomizedStrategy r = method == SolveMethod::Decompose
                             ? decompose_solve(p, obs, q)
                             : lp_solve(p, obs, q);
  SolveResult out{0.0, std::move(r), {}};
  out.value = evaluate(p, out.randomized);
  out.deterministic = extract_deterministic(p, out.randomized);
  return out;
}

DeterministicStrategy extract_deterministic(const DecisionProblem& p,
                                            const RandomizedStrategy& r) {
  validate_problem(p);
  const ObservationSupport obs = observation_support(p);
  const std::vector<std::vector<double>> q = partial_costs(p, obs);

  DeterministicStrategy det;
  for (size_t i = 0; i < obs.id.size(); ++i) {
    const auto row = r.rows.find(obs.id[i]);
    if (row == r.rows.end())
      throw ValidationError("strategy has no row for observation '" +
                            obs.id[i] + "'");
    // Among actions the row actually uses, take the cheapest; the map is
    // id-ordered, so the smallest id wins ties.
    const std::string* pick = nullptr;
    double best = 0.0;
    for (const auto& [cid, prob] : row->second) {
      if (prob <= kTieTol) continue;
      const int c = p.actions->index_of(cid);
      if (c < 0)
        throw ValidationError("strategy row at '" + obs.id[i] +
                              "' references unknown action '" + cid + "'");
      if (!pick || q[i][c] < best - kTieTol) {
        pick = &cid;
        best = q[i][c];
      }
    }
    if (!pick)
      throw ValidationError("strategy row at '" + obs.id[i] + "' is empty");
    det.choice[obs.id[i]] = *pick;
  }
  return det;
}

}  // namespace infotop
