#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "agnoboost/hypothesis.hpp"
#include "agnoboost/matrix.hpp"
#include "agnoboost/potential.hpp"
#include "agnoboost/relabel.hpp"
#include "agnoboost/weak_learner.hpp"
#include "agnoboost/weighted_set.hpp"

namespace agnoboost {

enum class BoostVariant { Plain, Reuse, Covariate, Pab };

const char* variant_name(BoostVariant v);
BoostVariant variant_from_name(const std::string& name);

// Every tunable of the boosting loops. Budgets of 0 mean "use the whole
// pool" (and, for the unlabeled batch, reuse it every round); positive
// budgets carve fresh seeded subsamples and fail loudly when the pools
// cannot cover them.
struct BoostConfig {
  BoostVariant variant = BoostVariant::Plain;
  double eta = 0.2;
  std::size_t rounds = 100;       // T
  double tau = 0.0;               // weak-correlation threshold, normalized scale
  std::size_t labeled_budget = 0;    // S; 0 = whole pool
  std::size_t unlabeled_batch = 0;   // U per round; 0 = whole pool each round
  std::size_t holdout_budget = 0;    // S0; 0 = whole holdout
  double sigma = 0.1;             // reuse only
  double ratio_bound = 1.0;       // C_X, covariate only
  double gamma = 1.0;
  PotentialFamily potential = PotentialFamily::huber();
  RelabelMode mode = RelabelMode::fractional();  // sample_count doubles as the
                                                 // PAB fresh batch size
  double labeled_mix_weight = 1.0 / 3.0;         // reuse labeled mass
  CovariateMixture covariate_mixture = CovariateMixture::CorrelationIdentity;
  bool allow_truncation = false;  // PAB: stop early instead of failing when
                                  // fresh samples run out
  std::uint64_t master_seed = 0;

  void validate() const;  // throws ConfigError naming the offending field
  nlohmann::json to_json() const;
  static BoostConfig from_json(const nlohmann::json& j);
};

// Inputs for the theory-mode parameter schedules.
struct TheoryConstants {
  double rounds = 1.0;
  double eta = 1.0;
  double tau = 1.0;
  double labeled = 1.0;
  double unlabeled = 1.0;
  double holdout = 1.0;
  double samples = 1.0;  // weak-learner draw count m
};

struct TheoryInputs {
  double epsilon = 0.1;
  double delta = 0.05;
  double gamma = 1.0;
  double complexity = 1.0;    // VC(B) or log |B|
  double ratio_bound = 1.0;   // C_X for the covariate schedule
  TheoryConstants constants;
};

// Fills a BoostConfig from the published schedule of the selected variant
// (each field scaled by its constant; integer fields rounded up). The
// oracle-efficient flag selects the alternative reuse schedule that trades
// unlabeled samples for fewer weak-learner calls. No schedule exists for the
// PAB baseline.
BoostConfig theory_params(const TheoryInputs& inputs, BoostVariant variant,
                          bool oracle_efficient = false);

// Per-round diagnostics mirroring the proof's case split.
struct RoundRecord {
  std::size_t round = 0;
  char branch = 'A';            // 'A' weak-hypothesis step, 'B' sign descent
  double weak_correlation = 0;  // normalized, compared against tau
  double tau = 0;
  std::size_t clamp_count = 0;  // reuse-probability clamps this round
  double potential_before = 0;  // empirical potential of H_t
};

struct RunReport {
  std::vector<RoundRecord> rounds;
  std::size_t rounds_completed = 0;
  bool truncated = false;
  std::size_t selected_round = 1;
  std::vector<double> holdout_correlations;  // prefixes 1..rounds_completed+1
  double final_potential = 0.0;              // empirical potential of the last prefix
  double train_accuracy = 0.0;
  double test_accuracy = -1.0;  // filled by the harness; -1 = not evaluated
  std::size_t labeled_used = 0;
  std::size_t unlabeled_used = 0;
  std::size_t holdout_used = 0;

  nlohmann::json to_json() const;
};

struct BoostResult {
  Ensemble ensemble;
  RunReport report;
};

// Runs the configured variant for T rounds: build the round's relabeling
// distribution, call the weak learner, take the weak-hypothesis step if its
// normalized correlation beats tau and the sign-descent step otherwise, then
// pick the best prefix on the holdout. The holdout is never touched by the
// training rounds.
BoostResult boost(const BoostConfig& cfg, const WeightedLabeledSet& labeled_pool,
                  const DataMatrix& unlabeled_pool,
                  const WeightedLabeledSet& holdout,
                  const WeakLearnerSpec& learner);

// Holdout post-selection over the prefix classifiers sign(H_t), t in
// [1, max(size, 1)]; ties go to the smaller round. Also reports the
// correlations of all size+1 prefixes.
struct PostSelection {
  std::size_t round = 1;
  std::vector<double> prefix_correlations;
};
PostSelection post_select(const Ensemble& ensemble,
                          const WeightedLabeledSet& holdout);

}  // namespace agnoboost
