#include "infotop/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "infotop/errors.hpp"

namespace infotop {

FiniteMetricSpace::FiniteMetricSpace(std::string name,
                                     std::vector<SpacePoint> points,
                                     MetricKind kind,
                                     std::vector<std::vector<double>> matrix)
    : name_(std::move(name)), points_(std::move(points)), kind_(kind),
      matrix_(std::move(matrix)) {
  if (name_.empty()) throw ValidationError("space name must be nonempty");
  if (points_.empty())
    throw ValidationError("space '" + name_ + "' has no points");

  std::set<std::string> ids;
  for (const auto& p : points_) {
    if (p.id.empty())
      throw ValidationError("space '" + name_ + "' has a point with empty id");
    if (!ids.insert(p.id).second)
      throw ValidationError("space '" + name_ + "' repeats point id '" + p.id + "'");
  }

  const size_t n = points_.size();
  switch (kind_) {
    case MetricKind::Euclidean: {
      const size_t dim = points_[0].coords.size();
      if (dim == 0)
        throw ValidationError("space '" + name_ +
                              "' is euclidean but point '" + points_[0].id +
                              "' has no coords");
      for (const auto& p : points_)
        if (p.coords.size() != dim)
          throw ValidationError("space '" + name_ + "' point '" + p.id +
                                "' has mismatched coordinate dimension");
      // Duplicate coordinates would make the metric degenerate and point
      // matching across documents ambiguous.
      for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
          if (points_[i].coords == points_[j].coords)
            throw ValidationError("space '" + name_ + "' points '" +
                                  points_[i].id + "' and '" + points_[j].id +
                                  "' share coordinates");
      break;
    }
    case MetricKind::Discrete:
      break;
    case MetricKind::Matrix: {
      if (matrix_.size() != n)
        throw ValidationError("space '" + name_ + "' metric matrix has " +
                              std::to_string(matrix_.size()) + " rows, expected " +
                              std::to_string(n));
      for (const auto& row : matrix_)
        if (row.size() != n)
          throw ValidationError("space '" + name_ + "' metric matrix is not square");
      for (size_t i = 0; i < n; ++i) {
        if (matrix_[i][i] != 0.0)
          throw ValidationError("space '" + name_ + "' metric has nonzero diagonal at '" +
                                points_[i].id + "'");
        for (size_t j = 0; j < n; ++j) {
          if (matrix_[i][j] < 0.0)
            throw ValidationError("space '" + name_ + "' metric has a negative entry");
          if (matrix_[i][j] != matrix_[j][i])
            throw ValidationError("space '" + name_ + "' metric is not symmetric");
        }
      }
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          for (size_t k = 0; k < n; ++k)
            if (matrix_[i][k] > matrix_[i][j] + matrix_[j][k] + 1e-12)
              throw ValidationError("space '" + name_ +
                                    "' metric violates the triangle inequality at (" +
                                    points_[i].id + "," + points_[j].id + "," +
                                    points_[k].id + ")");
      break;
    }
  }
}

int FiniteMetricSpace::index_of(const std::string& id) const {
  for (size_t i = 0; i < points_.size(); ++i)
    if (points_[i].id == id) return static_cast<int>(i);
  return -1;
}

double FiniteMetricSpace::distance(int i, int j) const {
  if (i == j) return 0.0;
  switch (kind_) {
    case MetricKind::Discrete:
      return 1.0;
    case MetricKind::Matrix:
      return matrix_[i][j];
    case MetricKind::Euclidean: {
      const auto& a = points_[i].coords;
      const auto& b = points_[j].coords;
      double s = 0.0;
      for (size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        s += d * d;
      }
      return std::sqrt(s);
    }
  }
  return 0.0;
}

bool FiniteMetricSpace::same_structure(const FiniteMetricSpace& other) const {
  if (name_ != other.name_ || kind_ != other.kind_ ||
      points_.size() != other.points_.size())
    return false;
  for (size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].id != other.points_[i].id) return false;
    if (points_[i].coords != other.points_[i].coords) return false;
  }
  if (kind_ == MetricKind::Matrix && matrix_ != other.matrix_) return false;
  return true;
}

SpacePtr make_space(std::string name, std::vector<SpacePoint> points,
                    MetricKind kind, std::vector<std::vector<double>> matrix) {
  return std::make_shared<FiniteMetricSpace>(std::move(name), std::move(points),
                                             kind, std::move(matrix));
}

SpacePtr make_real_axis(const std::string& name, std::vector<double> coords) {
  std::sort(coords.begin(), coords.end());
  int width = 1;
  for (size_t c = coords.size(); c > 10; c /= 10) ++width;
  std::string prefix = name;
  std::transform(prefix.begin(), prefix.end(), prefix.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  std::vector<SpacePoint> pts;
  pts.reserve(coords.size());
  for (size_t i = 0; i < coords.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%0*zu", width, i);
    pts.push_back({prefix + buf, {coords[i]}});
  }
  return make_space(name, std::move(pts), MetricKind::Euclidean);
}

SpacePtr make_discrete_axis(const std::string& name, std::vector<std::string> ids) {
  std::vector<SpacePoint> pts;
  pts.reserve(ids.size());
  for (auto& id : ids) pts.push_back({std::move(id), {}});
  return make_space(name, std::move(pts), MetricKind::Discrete);
}

ProductSpace::ProductSpace(std::vector<SpacePtr> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) throw ValidationError("product space needs at least one axis");
  std::set<std::string> names;
  for (const auto& a : axes_) {
    if (!a) throw ValidationError("product space has a null axis");
    if (!names.insert(a->name()).second)
      throw ValidationError("product space repeats axis name '" + a->name() + "'");
  }
}

int ProductSpace::axis_index(const std::string& name) const {
  for (size_t i = 0; i < axes_.size(); ++i)
    if (axes_[i]->name() == name) return static_cast<int>(i);
  return -1;
}

std::vector<std::string> ProductSpace::axis_names() const {
  std::vector<std::string> out;
  out.reserve(axes_.size());
  for (const auto& a : axes_) out.push_back(a->name());
  return out;
}

double ProductSpace::distance(const std::vector<int>& s,
                              const std::vector<int>& t) const {
  double d = 0.0;
  for (size_t k = 0; k < axes_.size(); ++k) d += axes_[k]->distance(s[k], t[k]);
  return d;
}

}  // namespace infotop
