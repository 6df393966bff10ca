#pragma once

#include <memory>
#include <string>
#include <vector>

namespace infotop {

enum class MetricKind { Euclidean, Discrete, Matrix };

struct SpacePoint {
  std::string id;
  std::vector<double> coords;  // empty unless the space carries coordinates
};

// A named finite set of points with one of three metrics: euclidean distance
// on point coordinates, the discrete metric (1 between distinct points), or an
// explicit symmetric matrix. Construction validates the metric axioms; the
// triangle inequality is checked with slack 1e-12 (only matrix spaces can
// violate it, the other two kinds satisfy it by construction).
class FiniteMetricSpace {
 public:
  FiniteMetricSpace(std::string name, std::vector<SpacePoint> points,
                    MetricKind kind,
                    std::vector<std::vector<double>> matrix = {});

  const std::string& name() const { return name_; }
  int size() const { return static_cast<int>(points_.size()); }
  const SpacePoint& point(int i) const { return points_[i]; }
  const std::vector<SpacePoint>& points() const { return points_; }
  MetricKind metric() const { return kind_; }
  const std::vector<std::vector<double>>& matrix() const { return matrix_; }

  // Index of a point id, or -1 when absent.
  int index_of(const std::string& id) const;

  double distance(int i, int j) const;

  // Same name, same point ids in order, same metric kind and (for matrix
  // spaces) entrywise equal matrices. Coordinates must match exactly.
  bool same_structure(const FiniteMetricSpace& other) const;

 private:
  std::string name_;
  std::vector<SpacePoint> points_;
  MetricKind kind_;
  std::vector<std::vector<double>> matrix_;
};

using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

SpacePtr make_space(std::string name, std::vector<SpacePoint> points,
                    MetricKind kind, std::vector<std::vector<double>> matrix = {});

// Convenience for one-dimensional euclidean axes: point ids are generated as
// <lowercase name><zero-padded rank> in ascending coordinate order.
SpacePtr make_real_axis(const std::string& name, std::vector<double> coords);

// Discrete axis from bare ids.
SpacePtr make_discrete_axis(const std::string& name, std::vector<std::string> ids);

// An ordered list of axes with unique names; the product metric is the sum of
// per-axis distances.
class ProductSpace {
 public:
  explicit ProductSpace(std::vector<SpacePtr> axes);

  int arity() const { return static_cast<int>(axes_.size()); }
  const FiniteMetricSpace& axis(int k) const { return *axes_[k]; }
  const SpacePtr& axis_ptr(int k) const { return axes_[k]; }
  int axis_index(const std::string& name) const;  // -1 when absent
  std::vector<std::string> axis_names() const;

  // Raw product distance (sum over axes) between two index tuples.
  double distance(const std::vector<int>& s, const std::vector<int>& t) const;

 private:
  std::vector<SpacePtr> axes_;
};

}  // namespace infotop
