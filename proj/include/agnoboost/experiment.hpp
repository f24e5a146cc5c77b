#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "agnoboost/booster.hpp"
#include "agnoboost/data.hpp"

namespace agnoboost {

struct GridSpec {
  std::vector<std::size_t> rounds_grid;  // T candidates
  std::vector<std::size_t> m_grid;       // weak-learner sample counts
  BoostConfig base;                      // everything else
};

struct SynthSpec {
  std::string kind;  // "halfspace" | "covariate_shift"
  std::size_t dim = 3;
  std::size_t count = 512;
  double label_noise = 0.0;
  double ratio_bound = 1.0;   // covariate_shift
  std::size_t count_q = 512;  // covariate_shift pool size
  std::uint64_t seed = 0;
  bool exhaustive = false;
};

struct TheoryMode {
  TheoryInputs inputs;
  BoostVariant variant = BoostVariant::Plain;
  bool oracle_efficient = false;
};

// One experiment: a data source, the split protocol, exactly one of
// (boost config, theory inputs, grid), and the harness knobs.
struct ExperimentConfig {
  // data source (exactly one)
  std::string dataset_path;
  CsvSchema schema;
  std::string positive_label;
  std::string manifest_path;
  std::string dataset_name;
  std::optional<SynthSpec> synth;

  SplitSpec split;

  std::optional<BoostConfig> boost_cfg;
  std::optional<TheoryMode> theory;
  std::optional<GridSpec> grid;

  WeakLearnerSpec learner;
  double holdout_fraction = 0.2;   // share of labeled training data used as D0
  std::size_t inner_folds = 3;     // grid selection: inner CV depth
  std::size_t selection_folds = 10;  // grid selection: outer folds scored
  std::size_t workers = 1;
  std::string out_path;

  void validate() const;
};

ExperimentConfig parse_experiment_config(const nlohmann::json& j);

struct LoadedData {
  LabeledDataset dataset;
  // Covariate-shift sources carry their own unlabeled pool; when present it
  // replaces the pool that label dropping would produce.
  std::optional<DataMatrix> external_pool;
};

LoadedData load_experiment_data(const ExperimentConfig& cfg);

struct FoldOutcome {
  std::size_t fold = 0;
  double test_accuracy = 0.0;
  RunReport report;
  Ensemble ensemble;
};

// Train/evaluate one fold: noise and label dropping hit the training side
// only, a seeded slice of the labeled training data becomes the selection
// holdout, and the (clean) test fold is scored with the selected prefix.
FoldOutcome run_fold(const LabeledDataset& ds,
                     const std::optional<DataMatrix>& external_pool,
                     const FoldSplit& fold_split, std::size_t fold_index,
                     const BoostConfig& cfg, const WeakLearnerSpec& learner,
                     const SplitSpec& sp, double holdout_fraction);

// Single run (fold 0 of the k-fold protocol). The returned report carries
// the resolved config, the run report, and the serialized ensemble; it is
// also written to out_path when set.
nlohmann::json cmd_run(const ExperimentConfig& cfg);

// Full k-fold cross-validation; reports per-fold accuracies and the
// "mean ± sd" summary line.
nlohmann::json cmd_cv(const ExperimentConfig& cfg);

// Grid search over (rounds, m): each cell is scored by inner cross-validation
// on training folds only, one winner is selected globally (ties to smaller
// rounds, then smaller m), and the winner is rerun as a full CV.
nlohmann::json cmd_grid(const ExperimentConfig& cfg);

// mean and sample standard deviation, formatted as in the CV reports
struct Summary {
  double mean = 0.0;
  double sd = 0.0;
  std::string formatted;  // e.g. "0.91 ± 0.04"
};
Summary summarize(const std::vector<double>& values);

}  // namespace agnoboost
