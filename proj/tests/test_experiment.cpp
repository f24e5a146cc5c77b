#include "agnoboost/experiment.hpp"

#include <regex>

#include "agnoboost/error.hpp"
#include "doctest.h"

using namespace agnoboost;

namespace {

nlohmann::json separable_config(std::size_t rounds = 8) {
  // dim-1 hypercube labels are a function of the single coordinate, so any
  // run that keeps one good stump reaches test accuracy 1 exactly
  return nlohmann::json{
      {"dataset",
       {{"synth",
         {{"kind", "halfspace"}, {"dim", 1}, {"count", 120}, {"seed", 9}}}}},
      {"split",
       {{"k", 4}, {"drop_fraction", 0.3}, {"noise_rate", 0.0}, {"seed", 11}}},
      {"boost",
       {{"variant", "plain"}, {"eta", 0.2}, {"rounds", rounds}, {"tau", 0.0},
        {"potential", "huber"}, {"mode", "fractional"}, {"seed", 21}}},
      {"learner", {{"kind", "stump"}}},
      {"holdout_fraction", 0.25},
  };
}

}  // namespace

TEST_CASE("experiment config validation") {
  SUBCASE("exactly one run mode") {
    nlohmann::json j = separable_config();
    j["theory"] = {{"epsilon", 0.1}};
    CHECK_THROWS_WITH_AS(parse_experiment_config(j),
                         doctest::Contains("exactly one"), ConfigError);
    j.erase("boost");
    j.erase("theory");
    CHECK_THROWS_AS(parse_experiment_config(j), ConfigError);
  }

  SUBCASE("invalid variant names the field") {
    nlohmann::json j = separable_config();
    j["boost"]["variant"] = "mystery";
    CHECK_THROWS_WITH_AS(parse_experiment_config(j),
                         doctest::Contains("boost.variant"), ConfigError);
  }

  SUBCASE("exactly one data source") {
    nlohmann::json j = separable_config();
    j["dataset"]["path"] = "somewhere.csv";
    CHECK_THROWS_AS(parse_experiment_config(j), ConfigError);
    j["dataset"].erase("synth");
    j["dataset"].erase("path");
    CHECK_THROWS_AS(parse_experiment_config(j), ConfigError);
  }

  SUBCASE("holdout fraction range") {
    nlohmann::json j = separable_config();
    j["holdout_fraction"] = 1.5;
    CHECK_THROWS_WITH_AS(parse_experiment_config(j),
                         doctest::Contains("holdout_fraction"), ConfigError);
  }
}

TEST_CASE("cmd_run on separable synthetic data reaches perfect test accuracy") {
  const ExperimentConfig cfg = parse_experiment_config(separable_config());
  const nlohmann::json report = cmd_run(cfg);
  CHECK(report.at("test_accuracy").get<double>() == doctest::Approx(1.0));
  CHECK(report.contains("ensemble"));
  CHECK(report.at("config").at("variant") == "plain");
  CHECK(report.at("report").at("rounds_completed") == 8);
}

TEST_CASE("cmd_run is reproducible modulo timestamps") {
  const ExperimentConfig cfg = parse_experiment_config(separable_config());
  nlohmann::json a = cmd_run(cfg);
  nlohmann::json b = cmd_run(cfg);
  a.erase("generated_at");
  b.erase("generated_at");
  CHECK(a.dump() == b.dump());
}

TEST_CASE("cmd_cv aggregates folds in the table format") {
  ExperimentConfig cfg = parse_experiment_config(separable_config());
  cfg.workers = 2;
  const nlohmann::json report = cmd_cv(cfg);
  CHECK(report.at("k") == 4);
  CHECK(report.at("fold_accuracies").size() == 4);
  CHECK(report.at("mean_accuracy").get<double>() == doctest::Approx(1.0));
  CHECK(report.at("formatted").get<std::string>() == "1.00 ± 0.00");
  const std::regex format(R"(\d\.\d\d .* \d\.\d\d)");
  CHECK(std::regex_search(report.at("formatted").get<std::string>(), format));

  SUBCASE("two folds on a separable set") {
    cfg.split.k = 2;
    const nlohmann::json two = cmd_cv(cfg);
    CHECK(two.at("k") == 2);
    CHECK(two.at("formatted").get<std::string>() == "1.00 ± 0.00");
  }
}

TEST_CASE("cmd_cv worker count does not change the result") {
  ExperimentConfig cfg = parse_experiment_config(separable_config());
  cfg.workers = 1;
  nlohmann::json a = cmd_cv(cfg);
  cfg.workers = 3;
  nlohmann::json b = cmd_cv(cfg);
  a.erase("generated_at");
  b.erase("generated_at");
  CHECK(a.dump() == b.dump());
}

TEST_CASE("theory mode resolves to a full config before running") {
  nlohmann::json j = separable_config();
  j.erase("boost");
  j["theory"] = {{"epsilon", 0.3}, {"gamma", 1.0}, {"complexity", 1.0},
                 {"variant", "plain"}};
  j["dataset"]["synth"]["count"] = 1200;  // cover the theory budgets
  j["split"]["drop_fraction"] = 0.6;
  const ExperimentConfig cfg = parse_experiment_config(j);
  REQUIRE(cfg.theory.has_value());
  const nlohmann::json report = cmd_cv(cfg);
  // resolved schedule is embedded for audit
  CHECK(report.at("config").at("rounds").get<std::size_t>() == 23);  // ceil(2/0.09)
  CHECK(report.at("config").at("mode") == "monte_carlo");
}

TEST_CASE("cmd_grid evaluates every cell and selects deterministically") {
  nlohmann::json j = separable_config();
  nlohmann::json base = j["boost"];
  j.erase("boost");
  j["grid"] = {{"rounds", {4, 8}}, {"m", {16, 32}}, {"base", base}};
  j["inner_folds"] = 2;
  j["selection_folds"] = 2;
  ExperimentConfig cfg = parse_experiment_config(j);
  cfg.workers = 2;

  const nlohmann::json report = cmd_grid(cfg);
  CHECK(report.at("cells").size() == 4);
  CHECK(report.at("final_cv").at("mean_accuracy").get<double>() ==
        doctest::Approx(1.0));
  // separable data ties every cell at 1.0, so the tie-break picks the
  // smallest rounds then the smallest m
  CHECK(report.at("best").at("rounds") == 4);
  CHECK(report.at("best").at("m") == 16);

  SUBCASE("empty grids are config errors") {
    j["grid"]["rounds"] = nlohmann::json::array();
    CHECK_THROWS_WITH_AS(parse_experiment_config(j),
                         doctest::Contains("grid.rounds"), ConfigError);
  }

  SUBCASE("a singleton grid reduces to plain cross-validation") {
    j["grid"]["rounds"] = {8};
    j["grid"]["m"] = {16};
    const nlohmann::json single = cmd_grid(parse_experiment_config(j));

    nlohmann::json cv_json = separable_config(8);
    cv_json["boost"]["m"] = 16;
    nlohmann::json cv = cmd_cv(parse_experiment_config(cv_json));
    nlohmann::json final_cv = single.at("final_cv");
    cv.erase("generated_at");
    final_cv.erase("generated_at");
    CHECK(final_cv.dump() == cv.dump());
  }
}

TEST_CASE("pab grid cells truncate instead of failing") {
  nlohmann::json j = separable_config();
  j["dataset"]["synth"]["count"] = 80;
  j["split"]["drop_fraction"] = 0.0;
  nlohmann::json base = j["boost"];
  base["variant"] = "pab";
  base["potential"] = "madaboost";
  j.erase("boost");
  // 40 rounds x m=8 overruns the per-fold labeled budget
  j["grid"] = {{"rounds", {40}}, {"m", {8}}, {"base", base}};
  j["inner_folds"] = 2;
  j["selection_folds"] = 1;
  const ExperimentConfig cfg = parse_experiment_config(j);

  const nlohmann::json report = cmd_grid(cfg);
  CHECK(report.at("cells").size() == 1);
  CHECK(report.at("cells")[0].at("truncated_any").get<bool>());
  CHECK(report.at("final_cv").at("mean_accuracy").get<double>() > 0.8);
}

TEST_CASE("covariate synthetic data routes the Q pool into the runs") {
  nlohmann::json j = separable_config();
  j["dataset"] = {{"synth",
                   {{"kind", "covariate_shift"}, {"dim", 4}, {"count", 160},
                    {"count_q", 200}, {"ratio_bound", 2.0}, {"seed", 13}}}};
  j["split"]["drop_fraction"] = 0.0;
  j["boost"]["variant"] = "covariate";
  j["boost"]["c_x"] = 2.0;
  const ExperimentConfig cfg = parse_experiment_config(j);
  const nlohmann::json report = cmd_run(cfg);
  CHECK(report.at("report").at("unlabeled_used") == 200);
  CHECK(report.at("test_accuracy").get<double>() > 0.7);
}
