#include "infotop/lift.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include "embed.hpp"
#include "flow.hpp"
#include "infotop/errors.hpp"
#include "infotop/metrics.hpp"

namespace infotop {

LiftedMeasure::LiftedMeasure(SpacePtr base, SpacePtr inner,
                             std::vector<SpacePtr> extras,
                             std::vector<LiftedAtom> atoms, bool functional,
                             InnerMetricKind inner_metric)
    : base_(std::move(base)),
      inner_(std::move(inner)),
      extras_(std::move(extras)),
      functional_(functional),
      inner_metric_(inner_metric) {
  if (!base_ || !inner_)
    throw ValidationError("lifted measure needs base and inner spaces");
  double total = 0.0;
  for (auto& a : atoms) {
    if (a.weight < 0.0)
      throw ValidationError("lifted measure has a negative weight");
    if (a.weight == 0.0) continue;
    if (a.base < 0 || a.base >= base_->size())
      throw ValidationError("lifted atom references a missing base point");
    if (a.extra.size() != extras_.size())
      throw ValidationError("lifted atom arity does not match trailing axes");
    for (size_t k = 0; k < extras_.size(); ++k)
      if (a.extra[k] < 0 || a.extra[k] >= extras_[k]->size())
        throw ValidationError("lifted atom references a missing trailing point");
    if (a.inner.space().arity() != 1 ||
        !a.inner.space().axis(0).same_structure(*inner_))
      throw ValidationError("inner measure lives on the wrong space");
    total += a.weight;
    atoms_.push_back(std::move(a));
  }
  if (atoms_.empty()) throw ValidationError("lifted measure has no atoms");
  if (std::abs(total - 1.0) > 1e-9)
    throw ValidationError("lifted measure weights must sum to 1");
  std::stable_sort(atoms_.begin(), atoms_.end(),
                   [](const LiftedAtom& a, const LiftedAtom& b) {
                     return std::tie(a.base, a.extra) < std::tie(b.base, b.extra);
                   });
  if (functional_) {
    for (size_t k = 1; k < atoms_.size(); ++k)
      if (atoms_[k].base == atoms_[k - 1].base)
        throw ValidationError(
            "functional lifted measure repeats base point '" +
            base_->point(atoms_[k].base).id + "'");
  }
}

DiscreteMeasure LiftedMeasure::base_marginal() const {
  std::map<std::vector<int>, double> w;
  for (const auto& a : atoms_) w[{a.base}] += a.weight;
  return DiscreteMeasure(ProductSpace({base_}), std::move(w));
}

LiftedMeasure psi(const DiscreteMeasure& mu, InnerMetricKind inner_metric) {
  if (mu.space().arity() != 2)
    throw ValidationError("psi expects a two-axis measure");
  auto [marg, kernel] = disintegrate(mu, {mu.space().axis(0).name()});
  std::vector<LiftedAtom> atoms;
  for (const auto& [t, w] : marg.atoms()) {
    const auto row = kernel.rows.find(t);
    atoms.push_back({t[0], row->second, {}, w});
  }
  return LiftedMeasure(mu.space().axis_ptr(0), mu.space().axis_ptr(1), {},
                       std::move(atoms), true, inner_metric);
}

DiscreteMeasure psi_inv(const LiftedMeasure& nu) {
  std::map<std::vector<int>, double> w;
  for (const auto& a : nu.atoms())
    for (const auto& [t, q] : a.inner.atoms()) w[{a.base, t[0]}] += a.weight * q;
  return DiscreteMeasure(ProductSpace({nu.base_space(), nu.inner_space()}),
                         std::move(w));
}

namespace {

int other_axis(const DiscreteMeasure& m, const std::string& shared,
               const char* what) {
  if (m.space().arity() != 2)
    throw ValidationError(std::string(what) + " expects two-axis measures");
  const int s = m.space().axis_index(shared);
  if (s < 0)
    throw ValidationError(std::string(what) + ": no axis named '" + shared + "'");
  return 1 - s;
}

}  // namespace

DiscreteMeasure chi1_glue(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                          const std::string& shared, double tol) {
  const int xk = other_axis(mu, shared, "chi1_glue");
  const int zk = other_axis(nu, shared, "chi1_glue");
  auto [ok, gap] = is_consistent(mu, nu, {shared}, tol);
  if (!ok)
    throw ConsistencyError("chi1_glue: shared-axis marginals differ", gap);

  auto [muY, kernel] = disintegrate(mu, {shared});
  const auto& yaxis = *muY.space().axis_ptr(0);

  // nu's shared axis may list the same ids in a different order.
  std::vector<int> remap(nu.space().axis(1 - zk).size());
  for (size_t i = 0; i < remap.size(); ++i)
    remap[i] = yaxis.index_of(nu.space().axis(1 - zk).point(i).id);

  std::map<std::vector<int>, double> w;
  for (const auto& [t, v] : nu.atoms()) {
    const int y = remap[t[1 - zk]];
    const auto row = kernel.rows.find(std::vector<int>{y});
    if (row == kernel.rows.end()) continue;  // mass below tol on nu's side
    for (const auto& [xt, q] : row->second.atoms())
      w[{xt[0], y, t[zk]}] += q * v;
  }
  return DiscreteMeasure(
      ProductSpace({mu.space().axis_ptr(xk), muY.space().axis_ptr(0),
                    nu.space().axis_ptr(zk)}),
      std::move(w));
}

LiftedMeasure phi1_glue(const LiftedMeasure& nu, const DiscreteMeasure& mu,
                        double tol) {
  if (!nu.extra_spaces().empty())
    throw ValidationError("phi1_glue: lifted argument already has trailing axes");
  const std::string& aname = nu.base_space()->name();
  const int ck = other_axis(mu, aname, "phi1_glue");
  const DiscreteMeasure base = nu.base_marginal();
  auto [ok, gap] = is_consistent(base, mu, {aname}, tol);
  if (!ok)
    throw ConsistencyError("phi1_glue: base marginals differ", gap);

  std::vector<int> remap(mu.space().axis(1 - ck).size());
  for (size_t i = 0; i < remap.size(); ++i)
    remap[i] = nu.base_space()->index_of(mu.space().axis(1 - ck).point(i).id);

  std::vector<LiftedAtom> out;
  for (const auto& atom : nu.atoms()) {
    const double mass = base.mass_at({atom.base});
    const double cond = atom.weight / mass;
    for (const auto& [t, v] : mu.atoms()) {
      if (remap[t[1 - ck]] != atom.base) continue;
      out.push_back({atom.base, atom.inner, {t[ck]}, cond * v});
    }
  }
  return LiftedMeasure(nu.base_space(), nu.inner_space(),
                       {mu.space().axis_ptr(ck)}, std::move(out), false,
                       nu.inner_metric());
}

DiscreteMeasure chi2_flatten(const LiftedMeasure& nu) {
  std::vector<SpacePtr> axes{nu.base_space(), nu.inner_space()};
  for (const auto& e : nu.extra_spaces()) axes.push_back(e);
  std::map<std::vector<int>, double> w;
  for (const auto& a : nu.atoms())
    for (const auto& [t, q] : a.inner.atoms()) {
      std::vector<int> key{a.base, t[0]};
      key.insert(key.end(), a.extra.begin(), a.extra.end());
      w[std::move(key)] += a.weight * q;
    }
  return DiscreteMeasure(ProductSpace(std::move(axes)), std::move(w));
}

double integrate_lifted(const PointIntegrand& g, const LiftedMeasure& nu) {
  double total = 0.0;
  for (const auto& a : nu.atoms()) {
    const std::string& aid = nu.base_space()->point(a.base).id;
    for (const auto& [t, q] : a.inner.atoms()) {
      const auto it = g.table.find({aid, a.inner.space().axis(0).point(t[0]).id});
      if (it == g.table.end())
        throw ValidationError("integrand table has no entry at (" + aid + ", " +
                              a.inner.space().axis(0).point(t[0]).id + ")");
      total += a.weight * q * it->second;
    }
  }
  return total;
}

double integrate_lifted(const InnerIntegrand& h, const LiftedMeasure& nu) {
  double total = 0.0;
  for (const auto& a : nu.atoms()) {
    const auto hit =
        std::find_if(h.entries.begin(), h.entries.end(), [&](const auto& e) {
          return max_atom_gap(e.first, a.inner) <= h.tol;
        });
    if (hit == h.entries.end())
      throw ValidationError(
          "no integrand entry matches the inner measure at base '" +
          nu.base_space()->point(a.base).id + "'");
    total += a.weight * hit->second;
  }
  return total;
}

namespace {

std::string find_shared_axis(const DiscreteMeasure& mu,
                             const DiscreteMeasure& nu, const char* what) {
  if (mu.space().arity() != 2 || nu.space().arity() != 2)
    throw ValidationError(std::string(what) + " expects two-axis measures");
  std::vector<std::string> common;
  for (const auto& n : mu.space().axis_names())
    if (nu.space().axis_index(n) >= 0) common.push_back(n);
  if (common.size() != 1)
    throw ValidationError(std::string(what) +
                          ": measures must share exactly one axis name");
  return common[0];
}

}  // namespace

DiscreteMeasure phi(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                    double tol) {
  const std::string shared = find_shared_axis(mu, nu, "phi");
  auto [ok, gap] = is_consistent(mu, nu, {shared}, tol);
  if (!ok) throw ConsistencyError("phi: shared-axis marginals differ", gap);

  const int bk = other_axis(mu, shared, "phi");
  const int ck = other_axis(nu, shared, "phi");
  auto [muA, kernel] = disintegrate(mu, {shared});

  std::vector<int> remap(nu.space().axis(1 - ck).size());
  for (size_t i = 0; i < remap.size(); ++i)
    remap[i] = muA.space().axis(0).index_of(nu.space().axis(1 - ck).point(i).id);

  std::map<std::vector<int>, double> w;
  for (const auto& [t, v] : nu.atoms()) {
    const int a = remap[t[1 - ck]];
    const auto row = kernel.rows.find(std::vector<int>{a});
    if (row == kernel.rows.end()) continue;
    for (const auto& [bt, q] : row->second.atoms()) w[{a, bt[0], t[ck]}] += q * v;
  }
  return DiscreteMeasure(
      ProductSpace({muA.space().axis_ptr(0), mu.space().axis_ptr(bk),
                    nu.space().axis_ptr(ck)}),
      std::move(w));
}

namespace {

// Unique key for exact duplicate detection among inner measures; bitwise on
// weights and coordinates, so equal-by-construction conditionals collapse
// (the common case for lifted images of structured measures) while measures
// over same-named axes with different geometry stay apart.
std::string inner_key(const DiscreteMeasure& m) {
  std::ostringstream os;
  const auto& axis = m.space().axis(0);
  for (const auto& p : axis.points()) {
    os << p.id << '(';
    for (double c : p.coords) os << std::bit_cast<uint64_t>(c) << ',';
    os << ')';
  }
  os << '|';
  for (const auto& [t, w] : m.atoms())
    os << axis.point(t[0]).id << ':' << std::bit_cast<uint64_t>(w) << ';';
  return os.str();
}

}  // namespace

double info_distance(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2,
                     InnerMetricKind base) {
  if (mu1.space().arity() != 2 || mu2.space().arity() != 2)
    throw ValidationError("info_distance expects two-axis measures");
  if (mu1.space().axis_names() != mu2.space().axis_names())
    throw ValidationError("info_distance: axis names differ");

  const LiftedMeasure l1 = psi(mu1, base), l2 = psi(mu2, base);
  const detail::MergedAxis merged = detail::merge_axis(
      mu1.space().axis_ptr(0), mu2.space().axis_ptr(0), "info_distance");

  // Distances between inner measures are needed once per distinct pair.
  std::vector<const DiscreteMeasure*> distinct;
  std::map<std::string, int> seen;
  auto distinct_of = [&](const LiftedMeasure& l) {
    std::vector<int> idx;
    for (const auto& a : l.atoms()) {
      const auto [it, fresh] =
          seen.try_emplace(inner_key(a.inner), static_cast<int>(distinct.size()));
      if (fresh) distinct.push_back(&a.inner);
      idx.push_back(it->second);
    }
    return idx;
  };
  const std::vector<int> d1 = distinct_of(l1), d2 = distinct_of(l2);

  const int nd = static_cast<int>(distinct.size());
  std::vector<std::vector<double>> inner_dist(nd, std::vector<double>(nd, 0.0));
  for (int i = 0; i < nd; ++i)
    for (int j = i + 1; j < nd; ++j) {
      const double d =
          base == InnerMetricKind::W1Truncated
              ? wasserstein1(*distinct[i], *distinct[j], {}).first
              : prohorov(*distinct[i], *distinct[j]);
      inner_dist[i][j] = inner_dist[j][i] = d;
    }

  std::vector<double> supply, demand;
  for (const auto& a : l1.atoms()) supply.push_back(a.weight);
  for (const auto& a : l2.atoms()) demand.push_back(a.weight);
  const auto& bspace = *merged.space;
  auto ground = [&](int i, int j) {
    const double da = bspace.distance(merged.left_map[l1.atoms()[i].base],
                                      merged.right_map[l2.atoms()[j].base]);
    return std::min(da, 1.0) + inner_dist[d1[i]][d2[j]];
  };
  if (base == InnerMetricKind::W1Truncated)
    return detail::solve_transport(supply, demand, ground).cost;
  return detail::prohorov_value(supply, demand, ground);
}

double expected_cost(const CostTable& c, const DiscreteMeasure& mu,
                     const DiscreteMeasure& nu, double tol) {
  const std::string shared = find_shared_axis(mu, nu, "expected_cost");
  auto [ok, gap] = is_consistent(mu, nu, {shared}, tol);
  if (!ok)
    throw ConsistencyError("expected_cost: shared-axis marginals differ", gap);

  const int ck = other_axis(nu, shared, "expected_cost");
  auto [muA, kernel] = disintegrate(mu, {shared});
  const auto& aaxis = muA.space().axis(0);

  std::vector<int> remap(nu.space().axis(1 - ck).size());
  for (size_t i = 0; i < remap.size(); ++i)
    remap[i] = aaxis.index_of(nu.space().axis(1 - ck).point(i).id);

  double total = 0.0;
  for (const auto& [t, v] : nu.atoms()) {
    const int a = remap[t[1 - ck]];
    const auto row = kernel.rows.find(std::vector<int>{a});
    if (row == kernel.rows.end()) continue;
    const std::string& aid = aaxis.point(a).id;
    const std::string& cid = nu.space().axis(ck).point(t[ck]).id;
    for (const auto& [bt, q] : row->second.atoms()) {
      const std::string& bid =
          row->second.space().axis(0).point(bt[0]).id;
      const auto it = c.find({aid, bid, cid});
      if (it == c.end())
        throw ValidationError("cost table has no entry at (" + aid + ", " + bid +
                              ", " + cid + ")");
      total += q * v * it->second;
    }
  }
  return total;
}

}  // namespace infotop
