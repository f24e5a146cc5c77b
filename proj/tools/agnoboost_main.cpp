// Command-line harness: single runs, cross-validation, grid search, theory
// parameter schedules, synthetic data generation, and potential-curve export.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "agnoboost/booster.hpp"
#include "agnoboost/data.hpp"
#include "agnoboost/error.hpp"
#include "agnoboost/experiment.hpp"
#include "agnoboost/potential.hpp"

namespace {

using namespace agnoboost;

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitBudget = 4;

struct CommonFlags {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file");
  cmd->add_option("--out", flags.out_path, "output path (overrides config)");
  cmd->add_option("--seed", flags.seed,
                  "master seed (overrides config boost seed and split seed)");
  cmd->add_option("--workers", flags.workers, "worker threads");
}

ExperimentConfig load_config(const CommonFlags& flags) {
  nlohmann::json j = nlohmann::json::object();
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) throw DataError("cannot open config '" + flags.config_path + "'");
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config '" + flags.config_path + "': " + e.what());
    }
  }
  ExperimentConfig cfg = parse_experiment_config(j);
  if (flags.seed.has_value()) {
    cfg.split.seed = *flags.seed;
    if (cfg.boost_cfg.has_value()) cfg.boost_cfg->master_seed = *flags.seed;
    if (cfg.grid.has_value()) cfg.grid->base.master_seed = *flags.seed;
  }
  if (flags.workers.has_value()) cfg.workers = *flags.workers;
  if (!flags.out_path.empty()) cfg.out_path = flags.out_path;
  return cfg;
}

int run_params(BoostVariant variant, const TheoryInputs& inputs,
               bool oracle_efficient, const std::string& out_path) {
  const BoostConfig cfg = theory_params(inputs, variant, oracle_efficient);
  std::cout << "variant  = " << variant_name(cfg.variant) << '\n'
            << "T        = " << cfg.rounds << '\n'
            << "eta      = " << cfg.eta << '\n'
            << "tau      = " << cfg.tau << '\n'
            << "S        = " << cfg.labeled_budget << '\n'
            << "U        = " << cfg.unlabeled_batch << '\n'
            << "S0       = " << cfg.holdout_budget << '\n'
            << "m        = " << cfg.mode.sample_count << '\n';
  if (cfg.variant == BoostVariant::Reuse)
    std::cout << "sigma    = " << cfg.sigma << "  (eta/gamma)\n";
  if (cfg.variant == BoostVariant::Covariate)
    std::cout << "C_X      = " << cfg.ratio_bound << '\n';
  std::cout << "potential= " << cfg.potential.name() << '\n';
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw DataError("cannot write '" + out_path + "'");
    out << cfg.to_json().dump(2) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semi-supervised agnostic boosting benchmark harness"};
  app.require_subcommand(1);

  CommonFlags run_flags, cv_flags, grid_flags;
  auto* run_cmd = app.add_subcommand(
      "run", "single boosting run (fold 0 of the split protocol)");
  add_common(run_cmd, run_flags);
  auto* cv_cmd = app.add_subcommand("cv", "k-fold cross-validation");
  add_common(cv_cmd, cv_flags);
  auto* grid_cmd = app.add_subcommand(
      "grid", "grid search over rounds and m, then a final CV with the winner");
  add_common(grid_cmd, grid_flags);

  // params
  std::string params_variant;
  std::string params_config;
  TheoryInputs theory_inputs;
  bool oracle_efficient = false;
  std::string params_out;
  auto* params_cmd =
      app.add_subcommand("params", "print a theory parameter schedule");
  params_cmd->add_option("--config", params_config,
                         "JSON config with a theory section (flags override)");
  params_cmd->add_option("--variant", params_variant, "plain|reuse|covariate");
  params_cmd->add_option("--epsilon", theory_inputs.epsilon, "target excess error");
  params_cmd->add_option("--delta", theory_inputs.delta, "failure probability");
  params_cmd->add_option("--gamma", theory_inputs.gamma, "weak learner edge");
  params_cmd->add_option("--complexity", theory_inputs.complexity,
                         "VC(B) or log|B|");
  params_cmd->add_option("--cx", theory_inputs.ratio_bound,
                         "density ratio bound (covariate)");
  params_cmd->add_flag("--oracle-efficient", oracle_efficient,
                       "reuse schedule trading unlabeled samples for fewer "
                       "weak-learner calls");
  params_cmd->add_option("--out", params_out, "also write the config as JSON");

  // potentials
  double z_min = -3.0, z_max = 3.0, z_step = 0.01;
  std::string potentials_out = "potentials.csv";
  auto* pot_cmd = app.add_subcommand(
      "potentials", "export potential curves (z, psi, phi/2, phi_mada) as CSV");
  pot_cmd->add_option("--zmin", z_min, "grid start");
  pot_cmd->add_option("--zmax", z_max, "grid end");
  pot_cmd->add_option("--step", z_step, "grid step");
  pot_cmd->add_option("--out", potentials_out, "output CSV path");

  // synth
  std::string synth_kind = "halfspace";
  std::size_t synth_dim = 3, synth_count = 512, synth_count_q = 512;
  double synth_noise = 0.0, synth_ratio = 1.0;
  std::uint64_t synth_seed = 0;
  bool synth_exhaustive = false;
  std::string synth_out = "synth.csv", synth_out_q;
  auto* synth_cmd =
      app.add_subcommand("synth", "generate a synthetic dataset as CSV");
  synth_cmd->add_option("--kind", synth_kind, "halfspace|covariate_shift");
  synth_cmd->add_option("--dim", synth_dim, "feature dimension");
  synth_cmd->add_option("--count", synth_count, "row count");
  synth_cmd->add_option("--count-q", synth_count_q,
                        "unlabeled pool size (covariate_shift)");
  synth_cmd->add_option("--noise", synth_noise, "label noise rate");
  synth_cmd->add_option("--ratio-bound", synth_ratio,
                        "density ratio bound (covariate_shift)");
  synth_cmd->add_option("--seed", synth_seed, "generator seed");
  synth_cmd->add_flag("--exhaustive", synth_exhaustive,
                      "enumerate all 2^dim hypercube points");
  synth_cmd->add_option("--out", synth_out, "labeled CSV path");
  synth_cmd->add_option("--out-q", synth_out_q,
                        "unlabeled pool CSV path (covariate_shift)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      const nlohmann::json report = cmd_run(load_config(run_flags));
      std::cout << "test_accuracy = " << report.at("test_accuracy")
                << "  selected_round = "
                << report.at("report").at("selected_round") << '\n';
      return 0;
    }
    if (cv_cmd->parsed()) {
      const nlohmann::json report = cmd_cv(load_config(cv_flags));
      std::cout << report.at("dataset").at("name").get<std::string>() << ": "
                << report.at("formatted").get<std::string>() << "  (k="
                << report.at("k") << ")\n";
      return 0;
    }
    if (grid_cmd->parsed()) {
      const nlohmann::json report = cmd_grid(load_config(grid_flags));
      const auto& best = report.at("best");
      std::cout << "best cell: rounds=" << best.at("rounds")
                << " m=" << best.at("m") << "  final: "
                << report.at("final_cv").at("formatted").get<std::string>()
                << '\n';
      return 0;
    }
    if (params_cmd->parsed()) {
      BoostVariant variant = BoostVariant::Plain;
      if (!params_config.empty()) {
        std::ifstream in(params_config);
        if (!in) throw DataError("cannot open config '" + params_config + "'");
        nlohmann::json j;
        try {
          in >> j;
        } catch (const nlohmann::json::exception& e) {
          throw ConfigError("config '" + params_config + "': " + e.what());
        }
        if (!j.contains("theory"))
          throw ConfigError("config: params needs a theory section");
        ExperimentConfig file_cfg;
        file_cfg = parse_experiment_config(
            nlohmann::json{{"dataset", {{"synth", {{"kind", "halfspace"}}}}},
                           {"theory", j.at("theory")}});
        TheoryInputs base = file_cfg.theory->inputs;
        variant = file_cfg.theory->variant;
        if (!params_cmd->count("--oracle-efficient"))
          oracle_efficient = file_cfg.theory->oracle_efficient;
        // flags override file values
        if (params_cmd->count("--epsilon")) base.epsilon = theory_inputs.epsilon;
        if (params_cmd->count("--delta")) base.delta = theory_inputs.delta;
        if (params_cmd->count("--gamma")) base.gamma = theory_inputs.gamma;
        if (params_cmd->count("--complexity"))
          base.complexity = theory_inputs.complexity;
        if (params_cmd->count("--cx")) base.ratio_bound = theory_inputs.ratio_bound;
        theory_inputs = base;
      }
      if (params_cmd->count("--variant"))
        variant = variant_from_name(params_variant);
      return run_params(variant, theory_inputs, oracle_efficient, params_out);
    }
    if (pot_cmd->parsed()) {
      std::ofstream out(potentials_out);
      if (!out) throw DataError("cannot write '" + potentials_out + "'");
      write_potential_curve(out, z_min, z_max, z_step);
      std::cout << "wrote " << potentials_out << '\n';
      return 0;
    }
    if (synth_cmd->parsed()) {
      if (synth_kind == "halfspace") {
        const LabeledDataset ds = synth_halfspace_hypercube(
            synth_dim, synth_count, synth_noise, synth_seed, synth_exhaustive);
        save_csv(ds, synth_out);
        std::cout << "wrote " << synth_out << " (" << ds.size() << " rows)\n";
      } else if (synth_kind == "covariate_shift") {
        const CovariateShiftData cov = synth_covariate_shift(
            synth_dim, synth_count, synth_count_q, synth_ratio, synth_seed);
        save_csv(cov.labeled, synth_out);
        const std::string qpath =
            synth_out_q.empty() ? synth_out + ".q.csv" : synth_out_q;
        LabeledDataset qset;
        qset.features = cov.unlabeled_q;
        qset.labels.assign(cov.unlabeled_q.rows(), 1);
        save_csv(qset, qpath);
        std::cout << "wrote " << synth_out << " and " << qpath
                  << " (pool labels are placeholders)\n";
      } else {
        throw ConfigError("synth.kind: unknown kind '" + synth_kind + "'");
      }
      return 0;
    }
  } catch (const BudgetError& e) {
    std::cerr << "budget error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
