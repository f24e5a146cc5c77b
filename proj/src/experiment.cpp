#include "agnoboost/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numeric>
#include <thread>

#include "agnoboost/error.hpp"
#include "agnoboost/rng.hpp"

namespace agnoboost {

namespace {

// Deterministic parallel map: results land by index, so the worker count
// never changes the output.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  const std::size_t count = std::min(workers, n);
  threads.reserve(count);
  for (std::size_t i = 0; i < count; ++i) threads.emplace_back(work);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

std::string format_pm(double mean, double sd) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f ± %.2f", mean, sd);
  return buf;
}

std::string timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_json(const nlohmann::json& j, const std::string& path) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

nlohmann::json fold_summary(const FoldOutcome& f) {
  return {
      {"fold", f.fold},
      {"test_accuracy", f.test_accuracy},
      {"selected_round", f.report.selected_round},
      {"rounds_completed", f.report.rounds_completed},
      {"truncated", f.report.truncated},
      {"train_accuracy", f.report.train_accuracy},
  };
}

}  // namespace

Summary summarize(const std::vector<double>& values) {
  Summary s;
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  s.formatted = format_pm(s.mean, s.sd);
  return s;
}

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------

namespace {

double get_num(const nlohmann::json& j, const char* key, double fallback,
               const std::string& path) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number())
    throw ConfigError(path + "." + key + ": expected a number");
  return j.at(key).get<double>();
}

std::size_t get_size(const nlohmann::json& j, const char* key,
                     std::size_t fallback, const std::string& path) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer() ||
      (v.is_number_integer() && !v.is_number_unsigned() &&
       v.get<long long>() < 0))
    throw ConfigError(path + "." + key + ": expected a nonnegative integer");
  return v.get<std::size_t>();
}

std::string get_str(const nlohmann::json& j, const char* key,
                    const std::string& fallback, const std::string& path) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string())
    throw ConfigError(path + "." + key + ": expected a string");
  return j.at(key).get<std::string>();
}

SplitSpec parse_split(const nlohmann::json& j) {
  SplitSpec sp;
  sp.k = get_size(j, "k", sp.k, "split");
  sp.drop_fraction = get_num(j, "drop_fraction", sp.drop_fraction, "split");
  sp.noise_rate = get_num(j, "noise_rate", sp.noise_rate, "split");
  sp.seed = get_size(j, "seed", sp.seed, "split");
  if (sp.k < 2) throw ConfigError("split.k: must be >= 2");
  if (sp.drop_fraction < 0.0 || sp.drop_fraction >= 1.0)
    throw ConfigError("split.drop_fraction: must lie in [0, 1)");
  if (sp.noise_rate < 0.0 || sp.noise_rate >= 0.5)
    throw ConfigError("split.noise_rate: must lie in [0, 0.5)");
  return sp;
}

WeakLearnerSpec parse_learner(const nlohmann::json& j) {
  WeakLearnerSpec spec;
  const std::string kind = get_str(j, "kind", "stump", "learner");
  if (kind == "stump") spec.kind = WeakLearnerSpec::Kind::StumpErm;
  else if (kind == "parity") spec.kind = WeakLearnerSpec::Kind::ParityErm;
  else throw ConfigError("learner.kind: unknown kind '" + kind +
                         "' (expected stump|parity)");
  spec.parity_degree = get_size(j, "degree", spec.parity_degree, "learner");
  spec.gamma = get_num(j, "gamma", spec.gamma, "learner");
  spec.epsilon0 = get_num(j, "epsilon0", spec.epsilon0, "learner");
  spec.parity_budget = get_size(j, "budget", spec.parity_budget, "learner");
  if (spec.gamma <= 0.0 || spec.gamma > 1.0)
    throw ConfigError("learner.gamma: must lie in (0, 1]");
  return spec;
}

TheoryMode parse_theory(const nlohmann::json& j) {
  TheoryMode t;
  t.inputs.epsilon = get_num(j, "epsilon", t.inputs.epsilon, "theory");
  t.inputs.delta = get_num(j, "delta", t.inputs.delta, "theory");
  t.inputs.gamma = get_num(j, "gamma", t.inputs.gamma, "theory");
  t.inputs.complexity = get_num(j, "complexity", t.inputs.complexity, "theory");
  t.inputs.ratio_bound = get_num(j, "c_x", t.inputs.ratio_bound, "theory");
  if (j.contains("variant"))
    t.variant = variant_from_name(j.at("variant").get<std::string>());
  if (j.contains("oracle_efficient"))
    t.oracle_efficient = j.at("oracle_efficient").get<bool>();
  if (j.contains("constants")) {
    const auto& c = j.at("constants");
    t.inputs.constants.rounds = get_num(c, "rounds", 1.0, "theory.constants");
    t.inputs.constants.eta = get_num(c, "eta", 1.0, "theory.constants");
    t.inputs.constants.tau = get_num(c, "tau", 1.0, "theory.constants");
    t.inputs.constants.labeled = get_num(c, "labeled", 1.0, "theory.constants");
    t.inputs.constants.unlabeled =
        get_num(c, "unlabeled", 1.0, "theory.constants");
    t.inputs.constants.holdout = get_num(c, "holdout", 1.0, "theory.constants");
    t.inputs.constants.samples = get_num(c, "samples", 1.0, "theory.constants");
  }
  return t;
}

SynthSpec parse_synth(const nlohmann::json& j) {
  SynthSpec s;
  s.kind = get_str(j, "kind", "halfspace", "dataset.synth");
  if (s.kind != "halfspace" && s.kind != "covariate_shift")
    throw ConfigError("dataset.synth.kind: unknown kind '" + s.kind +
                      "' (expected halfspace|covariate_shift)");
  s.dim = get_size(j, "dim", s.dim, "dataset.synth");
  s.count = get_size(j, "count", s.count, "dataset.synth");
  s.label_noise = get_num(j, "label_noise", s.label_noise, "dataset.synth");
  s.ratio_bound = get_num(j, "ratio_bound", s.ratio_bound, "dataset.synth");
  s.count_q = get_size(j, "count_q", s.count_q, "dataset.synth");
  s.seed = get_size(j, "seed", s.seed, "dataset.synth");
  if (j.contains("exhaustive")) s.exhaustive = j.at("exhaustive").get<bool>();
  return s;
}

}  // namespace

void ExperimentConfig::validate() const {
  int sources = 0;
  if (!dataset_path.empty()) ++sources;
  if (!dataset_name.empty() || !manifest_path.empty()) ++sources;
  if (synth.has_value()) ++sources;
  if (sources != 1)
    throw ConfigError(
        "dataset: exactly one of path, manifest+name, or synth is required");
  if ((dataset_name.empty()) != (manifest_path.empty()))
    throw ConfigError("dataset: manifest and name must be given together");

  int modes = 0;
  if (boost_cfg.has_value()) ++modes;
  if (theory.has_value()) ++modes;
  if (grid.has_value()) ++modes;
  if (modes != 1)
    throw ConfigError(
        "config: exactly one of boost, theory, or grid must be present");

  if (holdout_fraction <= 0.0 || holdout_fraction >= 1.0)
    throw ConfigError("holdout_fraction: must lie in (0, 1)");
  if (inner_folds < 2) throw ConfigError("inner_folds: must be >= 2");
  if (selection_folds < 1) throw ConfigError("selection_folds: must be >= 1");
  if (workers < 1) throw ConfigError("workers: must be >= 1");
  if (grid.has_value()) {
    if (grid->rounds_grid.empty()) throw ConfigError("grid.rounds: empty grid");
    if (grid->m_grid.empty()) throw ConfigError("grid.m: empty grid");
  }
}

ExperimentConfig parse_experiment_config(const nlohmann::json& j) {
  ExperimentConfig cfg;
  if (j.contains("dataset")) {
    const auto& d = j.at("dataset");
    if (d.contains("synth")) cfg.synth = parse_synth(d.at("synth"));
    if (d.contains("manifest") || d.contains("name")) {
      cfg.manifest_path = get_str(d, "manifest", "", "dataset");
      cfg.dataset_name = get_str(d, "name", "", "dataset");
    }
    if (d.contains("path")) {
      cfg.dataset_path = get_str(d, "path", "", "dataset");
      cfg.schema.label_column =
          get_size(d, "label_column", cfg.schema.label_column, "dataset");
      const std::string delim = get_str(d, "delimiter", ",", "dataset");
      if (delim.size() != 1)
        throw ConfigError("dataset.delimiter: expected a single character");
      cfg.schema.delimiter = delim[0];
      if (d.contains("header")) cfg.schema.header = d.at("header").get<bool>();
      cfg.positive_label = get_str(d, "positive_label", "", "dataset");
    }
  }
  if (j.contains("split")) cfg.split = parse_split(j.at("split"));
  if (j.contains("boost")) cfg.boost_cfg = BoostConfig::from_json(j.at("boost"));
  if (j.contains("theory")) cfg.theory = parse_theory(j.at("theory"));
  if (j.contains("grid")) {
    GridSpec g;
    const auto& gj = j.at("grid");
    if (gj.contains("rounds"))
      g.rounds_grid = gj.at("rounds").get<std::vector<std::size_t>>();
    if (gj.contains("m")) g.m_grid = gj.at("m").get<std::vector<std::size_t>>();
    if (gj.contains("base")) g.base = BoostConfig::from_json(gj.at("base"));
    cfg.grid = std::move(g);
  }
  if (j.contains("learner")) cfg.learner = parse_learner(j.at("learner"));
  cfg.holdout_fraction =
      get_num(j, "holdout_fraction", cfg.holdout_fraction, "config");
  cfg.inner_folds = get_size(j, "inner_folds", cfg.inner_folds, "config");
  cfg.selection_folds =
      get_size(j, "selection_folds", cfg.selection_folds, "config");
  cfg.workers = get_size(j, "workers", cfg.workers, "config");
  cfg.out_path = get_str(j, "out", cfg.out_path, "config");
  cfg.validate();
  return cfg;
}

// ---------------------------------------------------------------------------
// Data loading and the fold pipeline
// ---------------------------------------------------------------------------

LoadedData load_experiment_data(const ExperimentConfig& cfg) {
  LoadedData out;
  if (cfg.synth.has_value()) {
    const SynthSpec& s = *cfg.synth;
    if (s.kind == "halfspace") {
      out.dataset = synth_halfspace_hypercube(s.dim, s.count, s.label_noise,
                                              s.seed, s.exhaustive);
    } else {
      CovariateShiftData cov = synth_covariate_shift(
          s.dim, s.count, s.count_q, s.ratio_bound, s.seed);
      out.dataset = std::move(cov.labeled);
      out.external_pool = std::move(cov.unlabeled_q);
    }
    return out;
  }
  if (!cfg.dataset_name.empty()) {
    out.dataset = load_from_manifest(cfg.manifest_path, cfg.dataset_name);
    return out;
  }
  RawDataset raw = load_csv(cfg.dataset_path, cfg.schema);
  out.dataset = binarize_labels(raw, {cfg.positive_label});
  return out;
}

FoldOutcome run_fold(const LabeledDataset& ds,
                     const std::optional<DataMatrix>& external_pool,
                     const FoldSplit& fold_split, std::size_t fold_index,
                     const BoostConfig& cfg, const WeakLearnerSpec& learner,
                     const SplitSpec& sp, double holdout_fraction) {
  const LabeledDataset train = gather(ds, fold_split.train);
  const LabeledDataset test = gather(ds, fold_split.test);

  const LabeledDataset noisy = inject_noise(
      train, sp.noise_rate, derive_seed(sp.seed, Stream::Noise, fold_index));
  auto [labeled_ds, dropped_pool] = drop_labels(
      noisy, sp.drop_fraction, derive_seed(sp.seed, Stream::Drop, fold_index));
  const DataMatrix& pool =
      external_pool.has_value() ? *external_pool : dropped_pool;

  const std::size_t n_lab = labeled_ds.size();
  if (n_lab < 2)
    throw DataError("fold " + std::to_string(fold_index) +
                    ": not enough labeled training rows to carve a holdout");
  std::size_t h = static_cast<std::size_t>(
      std::llround(holdout_fraction * static_cast<double>(n_lab)));
  h = std::clamp<std::size_t>(h, 1, n_lab - 1);

  std::vector<std::size_t> idx(n_lab);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Rng carve_rng(derive_seed(sp.seed, Stream::HoldoutCarve, fold_index));
  carve_rng.shuffle(idx);
  std::vector<std::size_t> holdout_idx(idx.begin(), idx.begin() + h);
  std::vector<std::size_t> train_idx(idx.begin() + h, idx.end());
  std::sort(holdout_idx.begin(), holdout_idx.end());
  std::sort(train_idx.begin(), train_idx.end());

  const LabeledDataset holdout_ds = gather(labeled_ds, holdout_idx);
  const LabeledDataset train_lab = gather(labeled_ds, train_idx);

  BoostConfig fold_cfg = cfg;
  fold_cfg.master_seed = derive_seed(cfg.master_seed, Stream::Fold, fold_index);

  FoldOutcome out;
  out.fold = fold_index;
  BoostResult result = boost(fold_cfg, as_weighted(train_lab), pool,
                             as_weighted(holdout_ds), learner);

  double correct = 0.0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    const int pred = result.ensemble.predict_at_round(
        result.report.selected_round, test.features.row(i));
    if (pred == test.labels[i]) correct += 1.0;
  }
  out.test_accuracy =
      test.size() == 0 ? 0.0 : correct / static_cast<double>(test.size());
  result.report.test_accuracy = out.test_accuracy;
  out.report = std::move(result.report);
  out.ensemble = std::move(result.ensemble);
  return out;
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

namespace {

BoostConfig resolve_boost_config(const ExperimentConfig& cfg) {
  if (cfg.boost_cfg.has_value()) {
    BoostConfig c = *cfg.boost_cfg;
    c.validate();
    return c;
  }
  if (cfg.theory.has_value()) {
    return theory_params(cfg.theory->inputs, cfg.theory->variant,
                         cfg.theory->oracle_efficient);
  }
  throw ConfigError("config: this command needs a boost or theory section");
}

nlohmann::json dataset_info(const ExperimentConfig& cfg,
                            const LoadedData& data) {
  nlohmann::json j{{"name", data.dataset.name},
                   {"rows", data.dataset.size()},
                   {"dim", data.dataset.dim()}};
  if (cfg.synth.has_value()) j["source"] = "synthetic:" + cfg.synth->kind;
  else if (!cfg.dataset_name.empty()) j["source"] = "manifest:" + cfg.dataset_name;
  else j["source"] = cfg.dataset_path;
  return j;
}

nlohmann::json split_info(const SplitSpec& sp) {
  return {{"k", sp.k},
          {"drop_fraction", sp.drop_fraction},
          {"noise_rate", sp.noise_rate},
          {"seed", sp.seed}};
}

}  // namespace

nlohmann::json cmd_run(const ExperimentConfig& cfg) {
  cfg.validate();
  const BoostConfig boost_cfg = resolve_boost_config(cfg);
  const LoadedData data = load_experiment_data(cfg);

  const auto folds =
      kfold_splits(data.dataset.size(), cfg.split.k, cfg.split.seed);
  FoldOutcome outcome =
      run_fold(data.dataset, data.external_pool, folds[0], 0, boost_cfg,
               cfg.learner, cfg.split, cfg.holdout_fraction);

  nlohmann::json report{
      {"schema", "agnoboost/run-v1"},
      {"generated_at", timestamp_now()},
      {"dataset", dataset_info(cfg, data)},
      {"split", split_info(cfg.split)},
      {"config", boost_cfg.to_json()},
      {"report", outcome.report.to_json()},
      {"test_accuracy", outcome.test_accuracy},
      {"ensemble", outcome.ensemble.to_json()},
  };
  write_json(report, cfg.out_path);
  return report;
}

nlohmann::json cmd_cv(const ExperimentConfig& cfg) {
  cfg.validate();
  const BoostConfig boost_cfg = resolve_boost_config(cfg);
  const LoadedData data = load_experiment_data(cfg);

  const auto folds =
      kfold_splits(data.dataset.size(), cfg.split.k, cfg.split.seed);
  std::vector<FoldOutcome> outcomes(folds.size());
  parallel_for(folds.size(), cfg.workers, [&](std::size_t f) {
    outcomes[f] = run_fold(data.dataset, data.external_pool, folds[f], f,
                           boost_cfg, cfg.learner, cfg.split,
                           cfg.holdout_fraction);
  });

  std::vector<double> accuracies;
  accuracies.reserve(outcomes.size());
  nlohmann::json fold_reports = nlohmann::json::array();
  for (const auto& o : outcomes) {
    accuracies.push_back(o.test_accuracy);
    fold_reports.push_back(fold_summary(o));
  }
  const Summary s = summarize(accuracies);

  nlohmann::json report{
      {"schema", "agnoboost/cv-v1"},
      {"generated_at", timestamp_now()},
      {"dataset", dataset_info(cfg, data)},
      {"split", split_info(cfg.split)},
      {"config", boost_cfg.to_json()},
      {"k", folds.size()},
      {"fold_accuracies", accuracies},
      {"folds", std::move(fold_reports)},
      {"mean_accuracy", s.mean},
      {"sd", s.sd},
      {"formatted", s.formatted},
  };
  write_json(report, cfg.out_path);
  return report;
}

nlohmann::json cmd_grid(const ExperimentConfig& cfg) {
  cfg.validate();
  if (!cfg.grid.has_value())
    throw ConfigError("config: grid command needs a grid section");
  const GridSpec& grid = *cfg.grid;
  const LoadedData data = load_experiment_data(cfg);

  struct Cell {
    std::size_t rounds;
    std::size_t m;
    BoostConfig config;
    std::vector<double> scores;
    bool truncated_any = false;
  };
  // enumerate in (rounds asc, m asc) order so a strict max realizes the
  // smaller-rounds-then-smaller-m tie-break
  std::vector<std::size_t> rounds_grid = grid.rounds_grid;
  std::vector<std::size_t> m_grid = grid.m_grid;
  std::sort(rounds_grid.begin(), rounds_grid.end());
  rounds_grid.erase(std::unique(rounds_grid.begin(), rounds_grid.end()),
                    rounds_grid.end());
  std::sort(m_grid.begin(), m_grid.end());
  m_grid.erase(std::unique(m_grid.begin(), m_grid.end()), m_grid.end());

  std::vector<Cell> cells;
  for (std::size_t rounds : rounds_grid) {
    for (std::size_t m : m_grid) {
      Cell cell;
      cell.rounds = rounds;
      cell.m = m;
      cell.config = grid.base;
      cell.config.rounds = rounds;
      cell.config.mode.sample_count = m;
      if (cell.config.variant == BoostVariant::Pab)
        cell.config.allow_truncation = true;  // continue until samples run out
      cell.config.validate();
      cells.push_back(std::move(cell));
    }
  }

  // Selection: inner CV on the training side of the first selection_folds
  // outer folds; the held-out test folds never see any candidate.
  const auto outer =
      kfold_splits(data.dataset.size(), cfg.split.k, cfg.split.seed);
  const std::size_t sel_folds = std::min(cfg.selection_folds, outer.size());

  struct Task {
    std::size_t cell;
    std::size_t outer_fold;
    std::size_t inner_fold;
  };
  std::vector<Task> tasks;
  std::vector<std::vector<FoldSplit>> inner_splits(sel_folds);
  std::vector<LabeledDataset> outer_train(sel_folds);
  for (std::size_t f = 0; f < sel_folds; ++f) {
    outer_train[f] = gather(data.dataset, outer[f].train);
    inner_splits[f] =
        kfold_splits(outer_train[f].size(), cfg.inner_folds,
                     derive_seed(cfg.split.seed, Stream::InnerSplit, 2 * f));
    for (std::size_t c = 0; c < cells.size(); ++c)
      for (std::size_t i = 0; i < cfg.inner_folds; ++i)
        tasks.push_back({c, f, i});
  }

  std::vector<double> task_scores(tasks.size(), 0.0);
  std::vector<char> task_truncated(tasks.size(), 0);
  parallel_for(tasks.size(), cfg.workers, [&](std::size_t ti) {
    const Task& task = tasks[ti];
    SplitSpec inner_sp = cfg.split;
    inner_sp.k = cfg.inner_folds;
    inner_sp.seed = derive_seed(cfg.split.seed, Stream::InnerSplit,
                                2 * task.outer_fold + 1);
    BoostConfig cell_cfg = cells[task.cell].config;
    cell_cfg.master_seed = derive_seed(cell_cfg.master_seed, Stream::InnerSplit,
                                       task.outer_fold);
    const FoldOutcome o = run_fold(
        outer_train[task.outer_fold], data.external_pool,
        inner_splits[task.outer_fold][task.inner_fold], task.inner_fold,
        cell_cfg, cfg.learner, inner_sp, cfg.holdout_fraction);
    task_scores[ti] = o.test_accuracy;
    task_truncated[ti] = o.report.truncated ? 1 : 0;
  });
  for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
    cells[tasks[ti].cell].scores.push_back(task_scores[ti]);
    if (task_truncated[ti]) cells[tasks[ti].cell].truncated_any = true;
  }

  // Global winner; strict comparison over the sorted cells keeps the
  // smallest (rounds, m) among equals.
  std::size_t best = 0;
  std::vector<double> cell_means(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    cell_means[c] = summarize(cells[c].scores).mean;
    if (cell_means[c] > cell_means[best]) best = c;
  }

  ExperimentConfig final_cfg = cfg;
  final_cfg.grid.reset();
  final_cfg.boost_cfg = cells[best].config;
  final_cfg.out_path.clear();
  const nlohmann::json final_cv = cmd_cv(final_cfg);

  nlohmann::json cell_reports = nlohmann::json::array();
  for (std::size_t c = 0; c < cells.size(); ++c) {
    cell_reports.push_back({{"rounds", cells[c].rounds},
                            {"m", cells[c].m},
                            {"mean_inner_accuracy", cell_means[c]},
                            {"inner_scores", cells[c].scores},
                            {"truncated_any", cells[c].truncated_any}});
  }

  nlohmann::json report{
      {"schema", "agnoboost/grid-v1"},
      {"generated_at", timestamp_now()},
      {"dataset", dataset_info(cfg, data)},
      {"split", split_info(cfg.split)},
      {"cells", std::move(cell_reports)},
      {"selection_folds", sel_folds},
      {"inner_folds", cfg.inner_folds},
      {"best", {{"rounds", cells[best].rounds},
                {"m", cells[best].m},
                {"mean_inner_accuracy", cell_means[best]},
                {"config", cells[best].config.to_json()}}},
      {"final_cv", final_cv},
  };
  write_json(report, cfg.out_path);
  return report;
}

}  // namespace agnoboost
