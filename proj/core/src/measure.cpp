#include "infotop/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "infotop/errors.hpp"

namespace infotop {

namespace {

// Resolve axis names to indices, rejecting unknown or repeated names.
std::vector<int> resolve_axes(const ProductSpace& space,
                              const std::vector<std::string>& names,
                              const char* what) {
  if (names.empty())
    throw ValidationError(std::string(what) + ": axis list is empty");
  std::vector<int> out;
  std::set<int> seen;
  for (const auto& n : names) {
    const int k = space.axis_index(n);
    if (k < 0)
      throw ValidationError(std::string(what) + ": unknown axis '" + n + "'");
    if (!seen.insert(k).second)
      throw ValidationError(std::string(what) + ": repeated axis '" + n + "'");
    out.push_back(k);
  }
  return out;
}

std::vector<int> pick(const std::vector<int>& tuple, const std::vector<int>& sel) {
  std::vector<int> out;
  out.reserve(sel.size());
  for (int k : sel) out.push_back(tuple[k]);
  return out;
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(ProductSpace space,
                                 std::map<std::vector<int>, double> weights)
    : space_(std::move(space)) {
  const int arity = space_.arity();
  double total = 0.0;
  for (const auto& [t, w] : weights) {
    if (static_cast<int>(t.size()) != arity)
      throw ValidationError("atom arity " + std::to_string(t.size()) +
                            " does not match axis count " + std::to_string(arity));
    for (int k = 0; k < arity; ++k)
      if (t[k] < 0 || t[k] >= space_.axis(k).size())
        throw ValidationError("atom index out of range on axis '" +
                              space_.axis(k).name() + "'");
    if (w < 0.0)
      throw ValidationError("negative atom weight " + std::to_string(w));
    if (w == 0.0) continue;
    atoms_.emplace_back(t, w);
    total += w;
  }
  if (atoms_.empty()) throw ValidationError("measure has no positive atoms");
  if (std::abs(total - 1.0) > 1e-9)
    throw ValidationError("atom weights sum to " + std::to_string(total) +
                          ", expected 1 within 1e-9");
}

double DiscreteMeasure::mass_at(const std::vector<int>& t) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), t,
                             [](const auto& a, const std::vector<int>& key) {
                               return a.first < key;
                             });
  if (it != atoms_.end() && it->first == t) return it->second;
  return 0.0;
}

std::vector<std::string> DiscreteMeasure::ids_of(int k) const {
  std::vector<std::string> out;
  const auto& t = atoms_[k].first;
  out.reserve(t.size());
  for (int ax = 0; ax < space_.arity(); ++ax)
    out.push_back(space_.axis(ax).point(t[ax]).id);
  return out;
}

std::vector<std::string> Kernel::given_names() const {
  std::vector<std::string> out;
  for (const auto& s : given_spaces) out.push_back(s->name());
  return out;
}

std::vector<std::string> Kernel::target_names() const {
  std::vector<std::string> out;
  for (const auto& s : target_spaces) out.push_back(s->name());
  return out;
}

DiscreteMeasure marginal(const DiscreteMeasure& mu,
                         const std::vector<std::string>& axes) {
  const auto sel = resolve_axes(mu.space(), axes, "marginal");
  std::vector<SpacePtr> sub;
  for (int k : sel) sub.push_back(mu.space().axis_ptr(k));
  std::map<std::vector<int>, double> acc;
  for (const auto& [t, w] : mu.atoms()) acc[pick(t, sel)] += w;
  return DiscreteMeasure(ProductSpace(std::move(sub)), std::move(acc));
}

std::pair<DiscreteMeasure, Kernel> disintegrate(
    const DiscreteMeasure& mu, const std::vector<std::string>& given) {
  const auto sel = resolve_axes(mu.space(), given, "disintegrate");
  if (static_cast<int>(sel.size()) >= mu.space().arity())
    throw ValidationError("disintegrate: given axes must be a proper subset");

  std::vector<int> rest;
  for (int k = 0; k < mu.space().arity(); ++k)
    if (std::find(sel.begin(), sel.end(), k) == sel.end()) rest.push_back(k);

  DiscreteMeasure marg = marginal(mu, given);

  Kernel kernel;
  for (int k : sel) kernel.given_spaces.push_back(mu.space().axis_ptr(k));
  for (int k : rest) kernel.target_spaces.push_back(mu.space().axis_ptr(k));
  ProductSpace target_space(kernel.target_spaces);

  std::map<std::vector<int>, std::map<std::vector<int>, double>> slices;
  for (const auto& [t, w] : mu.atoms()) slices[pick(t, sel)][pick(t, rest)] += w;

  for (auto& [p, slice] : slices) {
    double mass = 0.0;
    for (const auto& [q, w] : slice) mass += w;
    std::map<std::vector<int>, double> row;
    for (const auto& [q, w] : slice) row[q] = w / mass;
    kernel.rows.emplace(p, DiscreteMeasure(target_space, std::move(row)));
  }
  return {std::move(marg), std::move(kernel)};
}

DiscreteMeasure compose(const DiscreteMeasure& marg, const Kernel& k) {
  if (k.given_spaces.empty() || k.target_spaces.empty())
    throw ValidationError("compose: kernel has empty given or target axes");

  std::vector<int> sel;
  for (const auto& g : k.given_spaces) {
    const int idx = marg.space().axis_index(g->name());
    if (idx < 0)
      throw ValidationError("compose: marginal lacks kernel axis '" + g->name() + "'");
    if (!g->same_structure(marg.space().axis(idx)))
      throw ValidationError("compose: axis '" + g->name() +
                            "' differs between marginal and kernel");
    sel.push_back(idx);
  }
  for (const auto& t : k.target_spaces)
    if (marg.space().axis_index(t->name()) >= 0)
      throw ValidationError("compose: target axis '" + t->name() +
                            "' already present in the marginal");

  // Rows must cover the support of the conditioning marginal exactly.
  std::set<std::vector<int>> support;
  for (const auto& [t, w] : marg.atoms()) support.insert(pick(t, sel));
  for (const auto& p : support)
    if (!k.rows.count(p))
      throw ConsistencyError("compose: kernel row missing for a support point", 0.0);
  if (k.rows.size() != support.size())
    throw ConsistencyError("compose: kernel rows outside the conditioning support",
                           0.0);

  std::vector<SpacePtr> axes;
  for (int i = 0; i < marg.space().arity(); ++i) axes.push_back(marg.space().axis_ptr(i));
  for (const auto& t : k.target_spaces) axes.push_back(t);

  std::map<std::vector<int>, double> acc;
  for (const auto& [t, w] : marg.atoms()) {
    const auto& row = k.rows.at(pick(t, sel));
    for (const auto& [q, rw] : row.atoms()) {
      std::vector<int> full = t;
      full.insert(full.end(), q.begin(), q.end());
      acc[full] += w * rw;
    }
  }
  return DiscreteMeasure(ProductSpace(std::move(axes)), std::move(acc));
}

namespace {

// Weight map keyed by point-id tuples, so measures over structurally equal
// but distinct space objects still compare.
std::map<std::vector<std::string>, double> id_weights(const DiscreteMeasure& m) {
  std::map<std::vector<std::string>, double> out;
  for (int k = 0; k < m.size(); ++k) out[m.ids_of(k)] += m.weight(k);
  return out;
}

double tv_by_ids(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  auto wa = id_weights(a);
  auto wb = id_weights(b);
  double tv = 0.0;
  for (const auto& [t, w] : wa) {
    auto it = wb.find(t);
    tv += std::abs(w - (it == wb.end() ? 0.0 : it->second));
  }
  for (const auto& [t, w] : wb)
    if (!wa.count(t)) tv += w;
  return tv;
}

}  // namespace

std::pair<bool, double> is_consistent(const DiscreteMeasure& mu,
                                      const DiscreteMeasure& nu,
                                      const std::vector<std::string>& shared,
                                      double tol) {
  resolve_axes(mu.space(), shared, "is_consistent(left)");
  resolve_axes(nu.space(), shared, "is_consistent(right)");
  for (const auto& name : shared) {
    const auto& a = mu.space().axis(mu.space().axis_index(name));
    const auto& b = nu.space().axis(nu.space().axis_index(name));
    std::set<std::string> ids_a, ids_b;
    for (const auto& p : a.points()) ids_a.insert(p.id);
    for (const auto& p : b.points()) ids_b.insert(p.id);
    if (ids_a != ids_b)
      throw ValidationError("is_consistent: shared axis '" + name +
                            "' has different point sets");
  }
  const double gap = tv_by_ids(marginal(mu, shared), marginal(nu, shared));
  return {gap <= tol, gap};
}

double cond_indep_gap(const DiscreteMeasure& mu, const std::string& given,
                      const std::string& b_axis, const std::string& c_axis) {
  if (mu.space().arity() != 3)
    throw ValidationError("cond_indep_gap: measure must have exactly three axes");
  const auto sel = resolve_axes(mu.space(), {given, b_axis, c_axis}, "cond_indep_gap");
  const int ia = sel[0], ib = sel[1], ic = sel[2];

  // Conditional slices over the b axis, given (a) and given (a,c).
  std::map<int, std::map<int, double>> by_a;
  std::map<std::pair<int, int>, std::map<int, double>> by_ac;
  for (const auto& [t, w] : mu.atoms()) {
    by_a[t[ia]][t[ib]] += w;
    by_ac[{t[ia], t[ic]}][t[ib]] += w;
  }

  auto normalize = [](const std::map<int, double>& slice) {
    double mass = 0.0;
    for (const auto& [b, w] : slice) mass += w;
    std::map<int, double> out;
    for (const auto& [b, w] : slice) out[b] = w / mass;
    return out;
  };

  double gap = 0.0;
  for (const auto& [ac, slice] : by_ac) {
    const auto p = normalize(slice);
    const auto q = normalize(by_a.at(ac.first));
    double tv = 0.0;
    for (const auto& [b, w] : p) {
      auto it = q.find(b);
      tv += std::abs(w - (it == q.end() ? 0.0 : it->second));
    }
    for (const auto& [b, w] : q)
      if (!p.count(b)) tv += w;
    gap = std::max(gap, tv);
  }
  return gap;
}

DiscreteMeasure permute_axes(const DiscreteMeasure& mu,
                             const std::vector<std::string>& order) {
  if (static_cast<int>(order.size()) != mu.space().arity())
    throw ValidationError("permute_axes: order must list every axis");
  const auto sel = resolve_axes(mu.space(), order, "permute_axes");
  std::vector<SpacePtr> axes;
  for (int k : sel) axes.push_back(mu.space().axis_ptr(k));
  std::map<std::vector<int>, double> acc;
  for (const auto& [t, w] : mu.atoms()) acc[pick(t, sel)] += w;
  return DiscreteMeasure(ProductSpace(std::move(axes)), std::move(acc));
}

double max_atom_gap(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  auto names_a = a.space().axis_names();
  auto names_b = b.space().axis_names();
  std::set<std::string> sa(names_a.begin(), names_a.end());
  std::set<std::string> sb(names_b.begin(), names_b.end());
  if (sa != sb) return std::numeric_limits<double>::infinity();
  const DiscreteMeasure aligned = names_a == names_b ? b : permute_axes(b, names_a);
  auto wa = id_weights(a);
  auto wb = id_weights(aligned);
  double gap = 0.0;
  for (const auto& [t, w] : wa) {
    auto it = wb.find(t);
    gap = std::max(gap, std::abs(w - (it == wb.end() ? 0.0 : it->second)));
  }
  for (const auto& [t, w] : wb)
    if (!wa.count(t)) gap = std::max(gap, w);
  return gap;
}

}  // namespace infotop
