#pragma once

#include <cstddef>

#include "agnoboost/hypothesis.hpp"
#include "agnoboost/weighted_set.hpp"

namespace agnoboost {

// Weak learner oracle configuration. Both implementations are exact ERM over
// their base class, so relative to that class they realize the oracle
// contract with edge 1 and zero slack; gamma/epsilon0 record the edge the
// booster should assume against the richer comparison class.
struct WeakLearnerSpec {
  enum class Kind { StumpErm, ParityErm };

  Kind kind = Kind::StumpErm;
  std::size_t parity_degree = 2;
  double gamma = 1.0;     // assumed edge, in (0, 1]
  double epsilon0 = 0.0;  // oracle slack; analysis input only
  std::size_t parity_budget = 1'000'000;
};

// Weight-normalized correlation: sum w_i y_i h(x_i) / sum w_i, in [-1, 1].
double empirical_correlation(const BaseHypothesis& h,
                             const WeightedLabeledSet& s);
double empirical_correlation(const PredictFn& h, const WeightedLabeledSet& s);

// Weighted accuracy of a classifier, in [0, 1].
double empirical_accuracy(const PredictFn& h, const WeightedLabeledSet& s);

// Exact maximizer of empirical correlation over all decision stumps
// (every feature, every midpoint threshold between consecutive distinct
// values, both polarities) and the two constants. Ties resolve to the
// first candidate in (constant +1, constant -1, feature asc, threshold asc,
// polarity +1 first) order. O(dim * n log n).
BaseHypothesis stump_erm(const WeightedLabeledSet& s);

// Exact maximizer over signed parities of degree <= d on {-1,+1}^n features,
// the empty set reported as a Constant. Enumerates subsets by size then
// lexicographically; throws BudgetError if the candidate count exceeds the cap.
BaseHypothesis parity_erm(const WeightedLabeledSet& s, std::size_t degree,
                          std::size_t budget = 1'000'000);

BaseHypothesis weak_learn(const WeakLearnerSpec& spec,
                          const WeightedLabeledSet& s);

}  // namespace agnoboost
