#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "agnoboost/matrix.hpp"

namespace agnoboost {

// Examples with real nonnegative weights and labels in {-1,+1}: the common
// currency between relabeling distributions and weak learners. Feature rows
// are stored flat; duplicated rows (fractional relabeling emits both signs
// per point) are simply stored twice.
class WeightedLabeledSet {
 public:
  WeightedLabeledSet() = default;
  explicit WeightedLabeledSet(std::size_t dim) : dim_(dim), dim_set_(true) {}

  void reserve(std::size_t n) {
    xs_.reserve(n * dim_);
    ys_.reserve(n);
    ws_.reserve(n);
  }

  void add(std::span<const double> x, int y, double w);

  std::size_t size() const { return ys_.size(); }
  bool empty() const { return ys_.empty(); }
  std::size_t dim() const { return dim_; }

  std::span<const double> x(std::size_t i) const {
    return {xs_.data() + i * dim_, dim_};
  }
  int y(std::size_t i) const { return ys_[i]; }
  double weight(std::size_t i) const { return ws_[i]; }
  std::span<const double> weights() const { return ws_; }

  double total_weight() const { return total_weight_; }

  void scale_weights(double c);

 private:
  std::size_t dim_ = 0;
  bool dim_set_ = false;
  std::vector<double> xs_;
  std::vector<std::int8_t> ys_;
  std::vector<double> ws_;
  double total_weight_ = 0.0;
};

// Uniform unit weights over a plain (features, labels) sample.
WeightedLabeledSet uniform_weighted(const DataMatrix& xs,
                                    std::span<const int> ys);

// Feature rows of a weighted set, as an unlabeled pool.
DataMatrix features_of(const WeightedLabeledSet& s);

}  // namespace agnoboost
