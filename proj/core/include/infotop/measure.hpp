#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "infotop/space.hpp"

namespace infotop {

// Finitely-supported probability measure over a product of finite metric
// spaces. Atoms are kept sorted by index tuple; zero weights are dropped at
// construction, negative weights and weight sums off by more than 1e-9 are
// rejected.
class DiscreteMeasure {
 public:
  DiscreteMeasure(ProductSpace space,
                  std::map<std::vector<int>, double> weights);

  const ProductSpace& space() const { return space_; }
  int size() const { return static_cast<int>(atoms_.size()); }
  const std::vector<int>& tuple(int k) const { return atoms_[k].first; }
  double weight(int k) const { return atoms_[k].second; }
  const std::vector<std::pair<std::vector<int>, double>>& atoms() const {
    return atoms_;
  }

  // Mass at an exact index tuple; 0 when the tuple is not an atom.
  double mass_at(const std::vector<int>& t) const;

  // Point ids of atom k, one per axis.
  std::vector<std::string> ids_of(int k) const;

 private:
  ProductSpace space_;
  std::vector<std::pair<std::vector<int>, double>> atoms_;
};

// Family of conditional distributions mu(.|p) over the target axes, defined on
// exactly the support of the conditioning marginal it was produced from. Row
// keys are index tuples into the given axes' spaces.
struct Kernel {
  std::vector<SpacePtr> given_spaces;
  std::vector<SpacePtr> target_spaces;
  std::map<std::vector<int>, DiscreteMeasure> rows;

  std::vector<std::string> given_names() const;
  std::vector<std::string> target_names() const;
};

// Marginal of mu onto the named axes; result axes follow the order of `axes`.
DiscreteMeasure marginal(const DiscreteMeasure& mu,
                         const std::vector<std::string>& axes);

// Split mu into its marginal on `given` and the conditional kernel over the
// remaining axes (in mu's axis order).
std::pair<DiscreteMeasure, Kernel> disintegrate(
    const DiscreteMeasure& mu, const std::vector<std::string>& given);

// Rebuild a joint from a marginal and a kernel. The kernel's given axes must
// be a subset of marg's axes, and its rows must cover the support of
// marginal(marg, given) exactly. Result axes: marg's axes followed by the
// kernel's target axes.
DiscreteMeasure compose(const DiscreteMeasure& marg, const Kernel& k);

// TV distance (unnormalized convention, range [0,2]) between the two
// shared-axis marginals, and whether it is within tol.
std::pair<bool, double> is_consistent(const DiscreteMeasure& mu,
                                      const DiscreteMeasure& nu,
                                      const std::vector<std::string>& shared,
                                      double tol = 1e-9);

// Largest TV distance, over support pairs (a,c), between mu(.|a,c) and
// mu(.|a) on the b axis. Zero exactly when conditional independence of b and
// c given a holds on the support. The three axes must cover mu's axes.
double cond_indep_gap(const DiscreteMeasure& mu, const std::string& given,
                      const std::string& b_axis, const std::string& c_axis);

// Reorder axes by name; `order` must be a permutation of mu's axis names.
DiscreteMeasure permute_axes(const DiscreteMeasure& mu,
                             const std::vector<std::string>& order);

// Largest absolute weight difference between atoms matched by point ids;
// infinity when the axis structures differ. Used for atom-by-atom closeness
// checks after round trips.
double max_atom_gap(const DiscreteMeasure& a, const DiscreteMeasure& b);

}  // namespace infotop
