#include "agnoboost/weak_learner.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "agnoboost/error.hpp"

namespace agnoboost {

namespace {

void require_positive_weight(const WeightedLabeledSet& s) {
  if (s.empty() || !(s.total_weight() > 0.0))
    throw std::invalid_argument("weak learner: total weight must be > 0");
}

}  // namespace

double empirical_correlation(const BaseHypothesis& h,
                             const WeightedLabeledSet& s) {
  require_positive_weight(s);
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    acc += s.weight(i) * s.y(i) * predict_base(h, s.x(i));
  return acc / s.total_weight();
}

double empirical_correlation(const PredictFn& h, const WeightedLabeledSet& s) {
  require_positive_weight(s);
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    acc += s.weight(i) * s.y(i) * h(s.x(i));
  return acc / s.total_weight();
}

double empirical_accuracy(const PredictFn& h, const WeightedLabeledSet& s) {
  return (1.0 + empirical_correlation(h, s)) / 2.0;
}

BaseHypothesis stump_erm(const WeightedLabeledSet& s) {
  require_positive_weight(s);
  const std::size_t n = s.size();
  const std::size_t dim = s.dim();
  if (dim == 0) throw std::invalid_argument("stump_erm: dimension must be >= 1");

  std::vector<double> wy(n);
  double total_wy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    wy[i] = s.weight(i) * s.y(i);
    total_wy += wy[i];
  }

  // Unnormalized scores; strict improvement keeps the earliest candidate in
  // the deterministic visit order.
  double best = -std::numeric_limits<double>::infinity();
  BaseHypothesis best_h = Constant{1};
  auto consider = [&](double score, BaseHypothesis h) {
    if (score > best) {
      best = score;
      best_h = std::move(h);
    }
  };

  consider(total_wy, Constant{1});
  consider(-total_wy, Constant{-1});

  std::vector<std::pair<double, double>> col(n);  // (value, w*y)
  std::vector<double> suffix(n + 1);
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = {s.x(i)[j], wy[i]};
    std::sort(col.begin(), col.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    suffix[n] = 0.0;
    for (std::size_t k = n; k > 0; --k)
      suffix[k - 1] = suffix[k] + col[k - 1].second;
    for (std::size_t k = 1; k < n; ++k) {
      const double lo = col[k - 1].first;
      const double hi = col[k].first;
      if (!(lo < hi)) continue;
      double theta = lo + (hi - lo) / 2.0;
      if (!(theta > lo)) theta = hi;  // degenerate midpoint in float
      // stump value = sum_{x_j >= theta} wy - sum_{x_j < theta} wy, polarity +1
      const double v = 2.0 * suffix[k] - total_wy;
      consider(v, Stump{j, theta, 1});
      consider(-v, Stump{j, theta, -1});
    }
  }
  return best_h;
}

BaseHypothesis parity_erm(const WeightedLabeledSet& s, std::size_t degree,
                          std::size_t budget) {
  require_positive_weight(s);
  const std::size_t n = s.size();
  const std::size_t dim = s.dim();

  for (std::size_t i = 0; i < n; ++i)
    for (double v : s.x(i))
      if (v != 1.0 && v != -1.0)
        throw std::invalid_argument("parity_erm: features must lie in {-1,+1}");

  // Candidate count sum_{k<=d} C(dim, k), saturating against the cap.
  std::size_t candidates = 0;
  {
    double binom = 1.0;
    for (std::size_t k = 0; k <= std::min(degree, dim); ++k) {
      if (k > 0) binom = binom * static_cast<double>(dim - k + 1) / static_cast<double>(k);
      if (binom > static_cast<double>(budget) ||
          static_cast<double>(candidates) + binom > static_cast<double>(budget)) {
        throw BudgetError("parity_erm: candidate count exceeds budget cap of " +
                          std::to_string(budget));
      }
      candidates += static_cast<std::size_t>(binom);
    }
  }
  (void)candidates;

  std::vector<double> wy(n);
  double total_wy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    wy[i] = s.weight(i) * s.y(i);
    total_wy += wy[i];
  }

  double best = -std::numeric_limits<double>::infinity();
  BaseHypothesis best_h = Constant{1};
  auto consider = [&](double score, BaseHypothesis h) {
    if (score > best) {
      best = score;
      best_h = std::move(h);
    }
  };

  // Empty subset: chi = 1, i.e. the constants.
  consider(total_wy, Constant{1});
  consider(-total_wy, Constant{-1});

  std::vector<std::size_t> subset;
  for (std::size_t k = 1; k <= std::min(degree, dim); ++k) {
    subset.resize(k);
    std::iota(subset.begin(), subset.end(), std::size_t{0});
    for (;;) {
      double v = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const auto x = s.x(i);
        double chi = 1.0;
        for (std::size_t idx : subset) chi *= x[idx];
        v += wy[i] * chi;
      }
      consider(v, Parity{subset, 1});
      consider(-v, Parity{subset, -1});

      // next k-combination in lexicographic order
      std::size_t pos = k;
      while (pos > 0 && subset[pos - 1] == dim - k + pos - 1) --pos;
      if (pos == 0) break;
      ++subset[pos - 1];
      for (std::size_t q = pos; q < k; ++q) subset[q] = subset[q - 1] + 1;
    }
  }
  return best_h;
}

BaseHypothesis weak_learn(const WeakLearnerSpec& spec,
                          const WeightedLabeledSet& s) {
  switch (spec.kind) {
    case WeakLearnerSpec::Kind::StumpErm:
      return stump_erm(s);
    case WeakLearnerSpec::Kind::ParityErm:
      return parity_erm(s, spec.parity_degree, spec.parity_budget);
  }
  throw std::invalid_argument("weak_learn: unknown learner kind");
}

}  // namespace agnoboost
