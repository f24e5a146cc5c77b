#pragma once

#include <cstddef>
#include <vector>

#include "agnoboost/hypothesis.hpp"
#include "agnoboost/matrix.hpp"
#include "agnoboost/potential.hpp"
#include "agnoboost/rng.hpp"
#include "agnoboost/weighted_set.hpp"

namespace agnoboost {

// How a round's resampling distribution is materialized for the weak
// learner: Fractional emits every outcome with its exact probability as a
// weight; MonteCarlo draws sample_count i.i.d. examples of weight 1/m.
struct RelabelMode {
  enum class Kind { MonteCarlo, Fractional };

  Kind kind = Kind::Fractional;
  std::size_t sample_count = 0;  // m; required >= 1 in MonteCarlo mode

  static RelabelMode fractional() { return {Kind::Fractional, 0}; }
  static RelabelMode monte_carlo(std::size_t m) {
    return {Kind::MonteCarlo, m};
  }
  bool is_monte_carlo() const { return kind == Kind::MonteCarlo; }
};

// Which mixture the covariate-shift distribution realizes. The measure with
// labeled mass 1/(1+C_X) matches the correlation identity the update
// constants are tuned for; the literal branching assigns mass 1/C_X to the
// labeled side.
enum class CovariateMixture { CorrelationIdentity, LiteralBranching };

// Round distribution for the plain semi-supervised booster: half the mass on
// the labeled set (spread proportionally to its weights) and half on
// pseudo-labeled unlabeled points, where x gets label +1 with probability
// (1 - psi'(H(x))) / 2. Output weights sum to 1.
WeightedLabeledSet build_plain(const Ensemble& ensemble,
                               const WeightedLabeledSet& labeled,
                               const DataMatrix& unlabeled,
                               PotentialFamily family, const RelabelMode& mode,
                               Rng* rng);

// Covariate-shift variant: same pseudo-labeling but the unlabeled pool comes
// from a shifted source Q and the labeled/pseudo masses depend on the density
// ratio bound.
WeightedLabeledSet build_covariate(
    const Ensemble& ensemble, const WeightedLabeledSet& labeled,
    const DataMatrix& unlabeled_from_q, double ratio_bound,
    PotentialFamily family, const RelabelMode& mode, Rng* rng,
    CovariateMixture mixture = CovariateMixture::CorrelationIdentity);

// Madaboost relabeling of a fresh labeled batch: each example keeps its label
// with probability e^{-zy} (1 when zy <= 0) and is otherwise labeled
// uniformly. MonteCarlo relabels each input item once; no resampling.
WeightedLabeledSet build_pab(const Ensemble& ensemble,
                             const WeightedLabeledSet& fresh_labeled,
                             const RelabelMode& mode, Rng* rng);

// ---------------------------------------------------------------------------
// Unlabeled-data-reuse distribution (PseudoHuber, Monte Carlo only)
// ---------------------------------------------------------------------------

// Sequential sampler for the recursive reuse distribution. Round t keeps a
// snapshot of every pool seen so far; a draw picks a source round s by the
// geometric law P(s=t)=sigma, P(s=t-1)=sigma(1-sigma), ..., with the
// remainder on round 1, whose pseudo-labels are uniform. Rounds s >= 2 label
// x from pool s via the second-order probability below, clamped to [0,1];
// clamp events are counted. Single-writer: rounds are inherently sequential,
// do not share a sampler across threads.
class ReuseSampler {
 public:
  ReuseSampler(double eta, double sigma, PotentialFamily family);

  // Enter round t with its fresh pool and the ensemble holding terms
  // 1..t-1. Snapshots the pool and caches per-row prefix values.
  void begin_round(const DataMatrix& pool, const Ensemble& ensemble);

  struct Draw {
    std::vector<double> x;
    int label = 1;
    std::size_t source_round = 0;
  };
  Draw draw(Rng& rng);

  // Mixes labeled draws (probability labeled_mix_weight, proportional to the
  // labeled weights) with draws from the reuse distribution; m items of
  // weight 1/m.
  WeightedLabeledSet build_round_set(const WeightedLabeledSet& labeled,
                                     double labeled_mix_weight, std::size_t m,
                                     Rng& rng);

  std::size_t round() const { return pools_.size(); }
  std::size_t clamp_count() const { return clamp_count_; }
  void reset_clamp_count() { clamp_count_ = 0; }
  const std::vector<std::size_t>& round_histogram() const {
    return round_histogram_;
  }

  // P(label = +1 | x drawn in round s >= 2) for step size draw eta_prime:
  // 1/2 - sigma psi'(a) / (2(eta+sigma))
  //     - eta psi''(a + eta_prime d) d / (2(eta+sigma))
  // with a = H_{s-1}(x) and d = h_{s-1}(x) the previous update direction.
  // Unclamped; the sampler clamps to [0,1] and counts violations.
  static double reuse_label_prob(double prefix_value, double direction,
                                 double eta_prime, double eta, double sigma);

 private:
  struct PoolState {
    DataMatrix pool;
    std::vector<double> base;       // H_{s-1}(x) per row (rounds >= 2)
    std::vector<double> direction;  // h_{s-1}(x) per row (rounds >= 2)
  };

  double eta_;
  double sigma_;
  std::vector<PoolState> pools_;
  std::size_t clamp_count_ = 0;
  std::vector<std::size_t> round_histogram_;
};

}  // namespace agnoboost
