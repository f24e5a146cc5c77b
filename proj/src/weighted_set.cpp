#include "agnoboost/weighted_set.hpp"

#include <cmath>
#include <stdexcept>

namespace agnoboost {

void WeightedLabeledSet::add(std::span<const double> x, int y, double w) {
  if (y != 1 && y != -1)
    throw std::invalid_argument("WeightedLabeledSet: label must be -1 or +1");
  if (!(w >= 0.0) || !std::isfinite(w))
    throw std::invalid_argument("WeightedLabeledSet: weight must be finite and >= 0");
  if (!dim_set_) {
    if (x.empty())
      throw std::invalid_argument("WeightedLabeledSet: empty feature vector");
    dim_ = x.size();
    dim_set_ = true;
  } else if (x.size() != dim_) {
    throw std::invalid_argument("WeightedLabeledSet: feature dimension mismatch");
  }
  xs_.insert(xs_.end(), x.begin(), x.end());
  ys_.push_back(static_cast<std::int8_t>(y));
  ws_.push_back(w);
  total_weight_ += w;
}

void WeightedLabeledSet::scale_weights(double c) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw std::invalid_argument("WeightedLabeledSet: scale must be finite and > 0");
  for (double& w : ws_) w *= c;
  total_weight_ *= c;
}

WeightedLabeledSet uniform_weighted(const DataMatrix& xs,
                                    std::span<const int> ys) {
  if (xs.rows() != ys.size())
    throw std::invalid_argument("uniform_weighted: row/label count mismatch");
  WeightedLabeledSet out(xs.cols());
  out.reserve(xs.rows());
  for (std::size_t i = 0; i < xs.rows(); ++i) out.add(xs.row(i), ys[i], 1.0);
  return out;
}

DataMatrix features_of(const WeightedLabeledSet& s) {
  DataMatrix out(s.dim());
  out.reserve_rows(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out.append_row(s.x(i));
  return out;
}

}  // namespace agnoboost
