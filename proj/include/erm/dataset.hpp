#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "erm/error.hpp"

namespace erm {

using FeatureVector = std::vector<double>;

enum class LabelSpace { Real, Binary };

inline bool label_conforms(LabelSpace space, double label) {
  if (!std::isfinite(label)) return false;
  return space == LabelSpace::Real || label == 1.0 || label == -1.0;
}

inline bool all_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

struct LabeledPoint {
  FeatureVector features;
  double label = 0.0;

  friend bool operator==(const LabeledPoint&, const LabeledPoint&) = default;
};

/// A non-empty, immutable collection of labeled points sharing one feature
/// dimension and one label space.
class Dataset {
 public:
  Dataset(std::vector<LabeledPoint> points, LabelSpace label_space)
      : points_(std::move(points)), label_space_(label_space) {
    if (points_.empty()) throw Error(ErrorCode::ZeroPoints, "dataset needs at least one point");
    feature_dim_ = points_.front().features.size();
    if (feature_dim_ == 0) throw Error(ErrorCode::DimensionMismatch, "feature dimension must be >= 1");
    for (std::size_t i = 0; i < points_.size(); ++i) {
      const auto& p = points_[i];
      if (p.features.size() != feature_dim_) {
        throw Error(ErrorCode::DimensionMismatch,
                    "point " + std::to_string(i) + " has " + std::to_string(p.features.size()) +
                        " features, expected " + std::to_string(feature_dim_));
      }
      if (!all_finite(p.features)) {
        throw Error(ErrorCode::NonFiniteValue, "point " + std::to_string(i) + " has a non-finite feature");
      }
      if (!std::isfinite(p.label)) {
        throw Error(ErrorCode::NonFiniteValue, "point " + std::to_string(i) + " has a non-finite label");
      }
      if (!label_conforms(label_space_, p.label)) {
        throw Error(ErrorCode::LabelOutsideSpace, "point " + std::to_string(i) + " label is not in {-1,+1}");
      }
    }
  }

  std::size_t size() const noexcept { return points_.size(); }
  std::size_t feature_dim() const noexcept { return feature_dim_; }
  LabelSpace label_space() const noexcept { return label_space_; }
  const std::vector<LabeledPoint>& points() const noexcept { return points_; }
  const LabeledPoint& operator[](std::size_t i) const { return points_[i]; }

  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.label_space_ == b.label_space_ && a.points_ == b.points_;
  }

 private:
  std::vector<LabeledPoint> points_;
  LabelSpace label_space_;
  std::size_t feature_dim_ = 0;
};

/// Copy of `data` with the label at `index` replaced.
inline Dataset corrupt_point(const Dataset& data, std::size_t index, double new_label) {
  if (index >= data.size()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "index " + std::to_string(index) + " on dataset of size " + std::to_string(data.size()));
  }
  if (!label_conforms(data.label_space(), new_label)) {
    throw Error(ErrorCode::LabelOutsideSpace, "replacement label does not conform to the label space");
  }
  std::vector<LabeledPoint> points = data.points();
  points[index].label = new_label;
  return Dataset(std::move(points), data.label_space());
}

/// Index of the point with the smallest first feature; ties go to the lowest index.
inline std::size_t leftmost_index(const Dataset& data) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < data.size(); ++i) {
    if (data[i].features[0] < data[best].features[0]) best = i;
  }
  return best;
}

}  // namespace erm
