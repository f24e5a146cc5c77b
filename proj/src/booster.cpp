#include "agnoboost/booster.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "agnoboost/error.hpp"
#include "agnoboost/rng.hpp"

namespace agnoboost {

const char* variant_name(BoostVariant v) {
  switch (v) {
    case BoostVariant::Plain: return "plain";
    case BoostVariant::Reuse: return "reuse";
    case BoostVariant::Covariate: return "covariate";
    case BoostVariant::Pab: return "pab";
  }
  return "?";
}

BoostVariant variant_from_name(const std::string& name) {
  if (name == "plain") return BoostVariant::Plain;
  if (name == "reuse") return BoostVariant::Reuse;
  if (name == "covariate") return BoostVariant::Covariate;
  if (name == "pab") return BoostVariant::Pab;
  throw ConfigError("boost.variant: unknown variant '" + name +
                    "' (expected plain|reuse|covariate|pab)");
}

void BoostConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& msg) {
    throw ConfigError("boost." + field + ": " + msg);
  };
  if (!(eta > 0.0) || !std::isfinite(eta)) fail("eta", "must be finite and > 0");
  if (rounds < 1) fail("rounds", "must be >= 1");
  if (!(tau >= 0.0) || !std::isfinite(tau)) fail("tau", "must be finite and >= 0");
  if (!(gamma > 0.0) || gamma > 1.0) fail("gamma", "must lie in (0, 1]");
  if (mode.is_monte_carlo() && mode.sample_count < 1)
    fail("m", "monte carlo relabeling needs m >= 1");

  switch (variant) {
    case BoostVariant::Plain:
      if (!potential.label_free_split())
        fail("potential", "plain variant needs huber or pseudo_huber");
      break;
    case BoostVariant::Covariate:
      if (!potential.label_free_split())
        fail("potential", "covariate variant needs huber or pseudo_huber");
      if (!(ratio_bound >= 1.0) || !std::isfinite(ratio_bound))
        fail("c_x", "must be finite and >= 1");
      break;
    case BoostVariant::Reuse:
      if (potential.kind != PotentialKind::PseudoHuber)
        fail("potential", "reuse variant needs pseudo_huber");
      if (!mode.is_monte_carlo())
        fail("mode", "reuse variant supports monte_carlo relabeling only");
      if (!(sigma > 0.0) || sigma > 1.0) fail("sigma", "must lie in (0, 1]");
      if (!(labeled_mix_weight > 0.0) || !(labeled_mix_weight < 1.0))
        fail("labeled_mix_weight", "must lie in (0, 1)");
      break;
    case BoostVariant::Pab:
      if (potential.kind != PotentialKind::Madaboost)
        fail("potential", "pab baseline needs madaboost");
      if (mode.sample_count < 1)
        fail("m", "pab needs a fresh batch size m >= 1");
      break;
  }
}

namespace {

PotentialFamily potential_from_name(const std::string& name) {
  if (name == "huber") return PotentialFamily::huber();
  if (name == "pseudo_huber") return PotentialFamily::pseudo_huber();
  if (name == "madaboost") return PotentialFamily::madaboost();
  throw ConfigError("boost.potential: unknown potential '" + name +
                    "' (expected huber|pseudo_huber|madaboost)");
}

}  // namespace

nlohmann::json BoostConfig::to_json() const {
  return nlohmann::json{
      {"variant", variant_name(variant)},
      {"eta", eta},
      {"rounds", rounds},
      {"tau", tau},
      {"labeled_budget", labeled_budget},
      {"unlabeled_batch", unlabeled_batch},
      {"holdout_budget", holdout_budget},
      {"sigma", sigma},
      {"c_x", ratio_bound},
      {"gamma", gamma},
      {"potential", potential.name()},
      {"mode", mode.is_monte_carlo() ? "monte_carlo" : "fractional"},
      {"m", mode.sample_count},
      {"labeled_mix_weight", labeled_mix_weight},
      {"covariate_mixture",
       covariate_mixture == CovariateMixture::CorrelationIdentity
           ? "correlation_identity"
           : "literal_branching"},
      {"allow_truncation", allow_truncation},
      {"seed", master_seed},
  };
}

BoostConfig BoostConfig::from_json(const nlohmann::json& j) {
  BoostConfig cfg;
  auto get = [&j](const char* key, auto& into) {
    if (j.contains(key)) {
      try {
        into = j.at(key).get<std::decay_t<decltype(into)>>();
      } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string("boost.") + key + ": invalid value");
      }
    }
  };
  if (j.contains("variant"))
    cfg.variant = variant_from_name(j.at("variant").get<std::string>());
  get("eta", cfg.eta);
  get("rounds", cfg.rounds);
  get("tau", cfg.tau);
  get("labeled_budget", cfg.labeled_budget);
  get("unlabeled_batch", cfg.unlabeled_batch);
  get("holdout_budget", cfg.holdout_budget);
  get("sigma", cfg.sigma);
  get("c_x", cfg.ratio_bound);
  get("gamma", cfg.gamma);
  if (j.contains("potential"))
    cfg.potential = potential_from_name(j.at("potential").get<std::string>());
  if (j.contains("mode")) {
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "fractional") cfg.mode.kind = RelabelMode::Kind::Fractional;
    else if (mode == "monte_carlo") cfg.mode.kind = RelabelMode::Kind::MonteCarlo;
    else throw ConfigError("boost.mode: unknown mode '" + mode +
                           "' (expected fractional|monte_carlo)");
  }
  get("m", cfg.mode.sample_count);
  get("labeled_mix_weight", cfg.labeled_mix_weight);
  if (j.contains("covariate_mixture")) {
    const std::string m = j.at("covariate_mixture").get<std::string>();
    if (m == "correlation_identity")
      cfg.covariate_mixture = CovariateMixture::CorrelationIdentity;
    else if (m == "literal_branching")
      cfg.covariate_mixture = CovariateMixture::LiteralBranching;
    else
      throw ConfigError("boost.covariate_mixture: unknown value '" + m + "'");
  }
  get("allow_truncation", cfg.allow_truncation);
  get("seed", cfg.master_seed);
  return cfg;
}

// ---------------------------------------------------------------------------
// Theory schedules
// ---------------------------------------------------------------------------

namespace {

// ceil that forgives float slop on values meant to be integral
std::size_t round_up(double v) {
  if (!(v > 0.0)) return 1;
  const double nearest = std::round(v);
  if (std::abs(v - nearest) < 1e-9 * std::max(1.0, std::abs(v)))
    return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::ceil(v));
}

}  // namespace

BoostConfig theory_params(const TheoryInputs& in, BoostVariant variant,
                          bool oracle_efficient) {
  auto fail = [](const std::string& field, const std::string& msg) {
    throw ConfigError("theory." + field + ": " + msg);
  };
  if (!(in.epsilon > 0.0) || in.epsilon >= 1.0)
    fail("epsilon", "must lie in (0, 1)");
  if (!(in.delta > 0.0) || in.delta >= 1.0) fail("delta", "must lie in (0, 1)");
  if (!(in.gamma > 0.0) || in.gamma > 1.0) fail("gamma", "must lie in (0, 1]");
  if (!(in.complexity > 0.0)) fail("complexity", "must be > 0");
  if (!(in.ratio_bound >= 1.0)) fail("c_x", "must be >= 1");

  const double eps = in.epsilon;
  const double g = in.gamma;
  const double g2e2 = g * g * eps * eps;
  const double l = in.complexity;
  const TheoryConstants& c = in.constants;

  BoostConfig cfg;
  cfg.variant = variant;
  cfg.gamma = g;

  switch (variant) {
    case BoostVariant::Plain:
      cfg.rounds = round_up(c.rounds * 2.0 / g2e2);
      cfg.eta = c.eta * g * g * eps;
      cfg.tau = c.tau * g * eps;
      cfg.labeled_budget = round_up(c.labeled * l / g2e2);
      cfg.unlabeled_batch = round_up(c.unlabeled * l / g2e2);
      cfg.holdout_budget = round_up(c.holdout / (eps * eps));
      cfg.mode = RelabelMode::monte_carlo(round_up(c.samples / g2e2));
      cfg.potential = PotentialFamily::huber();
      break;
    case BoostVariant::Reuse:
      if (!oracle_efficient) {
        cfg.eta = c.eta * g * g * eps / l;
        cfg.rounds = round_up(c.rounds * 2.0 * l / g2e2);
        cfg.unlabeled_batch = round_up(c.unlabeled / (g * eps));
      } else {
        // alternative guarantee: O(1/g^2 eps^2) oracle calls at the price of
        // more unlabeled draws per round
        cfg.eta = c.eta * g * g * eps;
        cfg.rounds = round_up(c.rounds * 2.0 / g2e2);
        cfg.unlabeled_batch =
            round_up(c.unlabeled * (l / (g * eps) + l * l * l / g));
      }
      cfg.tau = c.tau * g * eps;
      cfg.labeled_budget = round_up(c.labeled * l / g2e2);
      cfg.holdout_budget = round_up(c.holdout / (eps * eps));
      cfg.mode = RelabelMode::monte_carlo(round_up(c.samples / g2e2));
      cfg.sigma = std::min(1.0, cfg.eta / g);
      cfg.potential = PotentialFamily::pseudo_huber();
      break;
    case BoostVariant::Covariate: {
      const double cx = in.ratio_bound;
      cfg.rounds = round_up(c.rounds * 2.0 * cx / g2e2);
      cfg.eta = c.eta * g * g * eps / cx;
      cfg.tau = c.tau * 2.0 * g * eps / (1.0 + cx);
      cfg.labeled_budget = round_up(c.labeled * l / g2e2);
      cfg.unlabeled_batch = round_up(c.unlabeled * cx * cx * l / g2e2);
      cfg.holdout_budget = round_up(c.holdout / g2e2);
      cfg.mode = RelabelMode::monte_carlo(round_up(c.samples * cx * cx / g2e2));
      cfg.ratio_bound = cx;
      cfg.potential = PotentialFamily::huber();
      break;
    }
    case BoostVariant::Pab:
      fail("variant", "no published schedule for the pab baseline");
  }
  cfg.validate();
  return cfg;
}

// ---------------------------------------------------------------------------
// Boosting loop
// ---------------------------------------------------------------------------

namespace {

WeightedLabeledSet subsample(const WeightedLabeledSet& pool, std::size_t budget,
                             std::uint64_t seed, const char* what) {
  if (budget == 0 || budget == pool.size()) return pool;
  if (budget > pool.size())
    throw BudgetError(std::string(what) + " budget " + std::to_string(budget) +
                      " exceeds pool size " + std::to_string(pool.size()));
  std::vector<std::size_t> idx(pool.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(idx);
  idx.resize(budget);
  std::sort(idx.begin(), idx.end());
  WeightedLabeledSet out(pool.dim());
  out.reserve(budget);
  for (std::size_t i : idx) out.add(pool.x(i), pool.y(i), pool.weight(i));
  return out;
}

// Normalized copy of the labeled set: the degenerate "no unlabeled data"
// round distribution.
WeightedLabeledSet labeled_only_mixture(const WeightedLabeledSet& labeled,
                                        const RelabelMode& mode, Rng& rng) {
  WeightedLabeledSet out(labeled.dim());
  if (mode.is_monte_carlo()) {
    const std::size_t m = mode.sample_count;
    const double w = 1.0 / static_cast<double>(m);
    CumulativePicker picker(labeled.weights());
    out.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t i = picker.pick(rng);
      out.add(labeled.x(i), labeled.y(i), w);
    }
    return out;
  }
  out.reserve(labeled.size());
  for (std::size_t i = 0; i < labeled.size(); ++i)
    out.add(labeled.x(i), labeled.y(i),
            labeled.weight(i) / labeled.total_weight());
  return out;
}

double pab_round_potential(const Ensemble& ensemble,
                           const WeightedLabeledSet& batch) {
  const auto mada = PotentialFamily::madaboost();
  double acc = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i)
    acc += batch.weight(i) *
           phi(mada, {ensemble.evaluate(batch.x(i)), batch.y(i)});
  return acc / batch.total_weight();
}

}  // namespace

PostSelection post_select(const Ensemble& ensemble,
                          const WeightedLabeledSet& holdout) {
  if (holdout.empty() || !(holdout.total_weight() > 0.0))
    throw std::invalid_argument("post_select: holdout is empty");

  const std::size_t prefixes = ensemble.size() + 1;
  std::vector<double> corr(prefixes, 0.0);
  for (std::size_t i = 0; i < holdout.size(); ++i) {
    const std::vector<double> values = ensemble.eval_prefixes(holdout.x(i));
    const double wy = holdout.weight(i) * holdout.y(i);
    for (std::size_t t = 0; t < prefixes; ++t)
      corr[t] += wy * sign_of(values[t]);
  }
  for (double& v : corr) v /= holdout.total_weight();

  // Candidates are the prefixes entering each completed round; the smallest
  // round wins ties.
  const std::size_t candidates = std::max<std::size_t>(ensemble.size(), 1);
  std::size_t best = 0;
  for (std::size_t t = 1; t < candidates; ++t)
    if (corr[t] > corr[best]) best = t;
  return {best + 1, std::move(corr)};
}

BoostResult boost(const BoostConfig& cfg,
                  const WeightedLabeledSet& labeled_pool,
                  const DataMatrix& unlabeled_pool,
                  const WeightedLabeledSet& holdout,
                  const WeakLearnerSpec& learner) {
  cfg.validate();
  if (labeled_pool.empty())
    throw std::invalid_argument("boost: labeled pool is empty");
  if (holdout.empty())
    throw std::invalid_argument("boost: holdout is empty");
  if (holdout.dim() != labeled_pool.dim())
    throw std::invalid_argument("boost: holdout dimension mismatch");
  if (unlabeled_pool.rows() > 0 && unlabeled_pool.cols() != labeled_pool.dim())
    throw std::invalid_argument("boost: unlabeled pool dimension mismatch");

  const WeightedLabeledSet dhat =
      subsample(labeled_pool, cfg.labeled_budget,
                derive_seed(cfg.master_seed, Stream::LabeledSample), "labeled");
  const WeightedLabeledSet d0 =
      subsample(holdout, cfg.holdout_budget,
                derive_seed(cfg.master_seed, Stream::HoldoutSample), "holdout");

  const bool is_pab = cfg.variant == BoostVariant::Pab;
  const bool fresh_batches = !is_pab && cfg.unlabeled_batch > 0;

  // Fresh unlabeled batches consume disjoint slices of a seeded permutation.
  std::vector<std::size_t> unlabeled_perm;
  if (fresh_batches) {
    if (cfg.unlabeled_batch * cfg.rounds > unlabeled_pool.rows())
      throw BudgetError("unlabeled budget " +
                        std::to_string(cfg.unlabeled_batch) + " x " +
                        std::to_string(cfg.rounds) + " rounds exceeds pool size " +
                        std::to_string(unlabeled_pool.rows()));
    unlabeled_perm.resize(unlabeled_pool.rows());
    std::iota(unlabeled_perm.begin(), unlabeled_perm.end(), std::size_t{0});
    Rng rng(derive_seed(cfg.master_seed, Stream::UnlabeledSample));
    rng.shuffle(unlabeled_perm);
  }

  // PAB consumes fresh labeled samples in a seeded order.
  std::vector<std::size_t> pab_perm;
  std::size_t pab_cursor = 0;
  if (is_pab) {
    if (!cfg.allow_truncation &&
        cfg.mode.sample_count * cfg.rounds > dhat.size())
      throw BudgetError(
          "pab needs " + std::to_string(cfg.mode.sample_count) + " fresh samples x " +
          std::to_string(cfg.rounds) + " rounds but only " +
          std::to_string(dhat.size()) + " are available");
    pab_perm.resize(dhat.size());
    std::iota(pab_perm.begin(), pab_perm.end(), std::size_t{0});
    Rng rng(derive_seed(cfg.master_seed, Stream::PabShuffle));
    rng.shuffle(pab_perm);
  }

  const bool plain_degenerate =
      cfg.variant == BoostVariant::Plain && unlabeled_pool.rows() == 0;
  if (plain_degenerate)
    std::cerr << "[agnoboost] warning: plain variant with an empty unlabeled "
                 "pool; falling back to a labeled-only round mixture\n";
  if (cfg.variant == BoostVariant::Covariate && unlabeled_pool.rows() == 0)
    throw std::invalid_argument("boost: covariate variant needs an unlabeled pool");
  if (cfg.variant == BoostVariant::Reuse && unlabeled_pool.rows() == 0)
    throw std::invalid_argument("boost: reuse variant needs an unlabeled pool");

  Ensemble ensemble;
  RunReport report;
  report.rounds.reserve(cfg.rounds);

  std::optional<ReuseSampler> sampler;
  if (cfg.variant == BoostVariant::Reuse)
    sampler.emplace(cfg.eta, cfg.sigma, cfg.potential);
  std::size_t clamped_so_far = 0;

  DataMatrix fresh_batch(labeled_pool.dim());
  for (std::size_t t = 1; t <= cfg.rounds; ++t) {
    Rng round_rng(derive_seed(cfg.master_seed, Stream::Round, t));

    const DataMatrix* batch = nullptr;
    if (!is_pab && !plain_degenerate) {
      if (fresh_batches) {
        fresh_batch = DataMatrix(unlabeled_pool.cols());
        fresh_batch.reserve_rows(cfg.unlabeled_batch);
        for (std::size_t k = 0; k < cfg.unlabeled_batch; ++k)
          fresh_batch.append_row(
              unlabeled_pool.row(unlabeled_perm[(t - 1) * cfg.unlabeled_batch + k]));
        batch = &fresh_batch;
        report.unlabeled_used += cfg.unlabeled_batch;
      } else {
        batch = &unlabeled_pool;
      }
    }

    // PAB consumes its fresh batch up front so depletion can end the run.
    WeightedLabeledSet pab_fresh(dhat.dim());
    if (is_pab) {
      const std::size_t remaining = dhat.size() - pab_cursor;
      std::size_t take = cfg.mode.sample_count;
      if (remaining < take) {
        if (!cfg.allow_truncation)
          throw BudgetError("pab ran out of fresh labeled samples at round " +
                            std::to_string(t));
        take = remaining;
      }
      if (take == 0) break;
      pab_fresh.reserve(take);
      for (std::size_t k = 0; k < take; ++k) {
        const std::size_t i = pab_perm[pab_cursor++];
        pab_fresh.add(dhat.x(i), dhat.y(i), dhat.weight(i));
      }
      report.labeled_used += take;
    }

    RoundRecord record;
    record.round = t;
    record.tau = cfg.tau;

    WeightedLabeledSet dt;
    switch (cfg.variant) {
      case BoostVariant::Plain:
        if (plain_degenerate) {
          record.potential_before = empirical_split_potential(
              cfg.potential, ensemble, dhat, features_of(dhat));
          dt = labeled_only_mixture(dhat, cfg.mode, round_rng);
        } else {
          record.potential_before =
              empirical_split_potential(cfg.potential, ensemble, dhat, *batch);
          dt = build_plain(ensemble, dhat, *batch, cfg.potential, cfg.mode,
                           &round_rng);
        }
        break;
      case BoostVariant::Covariate:
        record.potential_before =
            empirical_split_potential(cfg.potential, ensemble, dhat, *batch);
        dt = build_covariate(ensemble, dhat, *batch, cfg.ratio_bound,
                             cfg.potential, cfg.mode, &round_rng,
                             cfg.covariate_mixture);
        break;
      case BoostVariant::Reuse:
        record.potential_before =
            empirical_split_potential(cfg.potential, ensemble, dhat, *batch);
        sampler->begin_round(*batch, ensemble);
        dt = sampler->build_round_set(dhat, cfg.labeled_mix_weight,
                                      cfg.mode.sample_count, round_rng);
        record.clamp_count = sampler->clamp_count() - clamped_so_far;
        clamped_so_far = sampler->clamp_count();
        break;
      case BoostVariant::Pab:
        record.potential_before = pab_round_potential(ensemble, pab_fresh);
        dt = build_pab(ensemble, pab_fresh, cfg.mode, &round_rng);
        break;
    }

    const BaseHypothesis weak = weak_learn(learner, dt);
    record.weak_correlation = empirical_correlation(weak, dt);
    if (record.weak_correlation > cfg.tau) {
      record.branch = 'A';
      ensemble.append_weak(cfg.eta / cfg.gamma, weak);
    } else {
      record.branch = 'B';
      ensemble.append_sign_descent(cfg.eta);
    }
    report.rounds.push_back(record);
  }

  report.rounds_completed = ensemble.size();
  report.truncated = report.rounds_completed < cfg.rounds;
  if (!is_pab) {
    report.labeled_used = dhat.size();
    if (!fresh_batches) report.unlabeled_used = unlabeled_pool.rows();
  }
  report.holdout_used = d0.size();

  if (is_pab) {
    report.final_potential = pab_round_potential(ensemble, dhat);
  } else if (plain_degenerate) {
    report.final_potential = empirical_split_potential(
        cfg.potential, ensemble, dhat, features_of(dhat));
  } else {
    report.final_potential = empirical_split_potential(
        cfg.potential, ensemble, dhat,
        fresh_batches ? fresh_batch : unlabeled_pool);
  }

  PostSelection selection = post_select(ensemble, d0);
  report.selected_round = selection.round;
  report.holdout_correlations = std::move(selection.prefix_correlations);
  report.train_accuracy =
      empirical_accuracy(sign_predictor_at(ensemble, report.selected_round), dhat);

  return {std::move(ensemble), std::move(report)};
}

nlohmann::json RunReport::to_json() const {
  nlohmann::json rounds_json = nlohmann::json::array();
  for (const auto& r : rounds) {
    rounds_json.push_back({
        {"round", r.round},
        {"branch", r.branch == 'A' ? "A-weak" : "B-descent"},
        {"weak_correlation", r.weak_correlation},
        {"tau", r.tau},
        {"clamp_count", r.clamp_count},
        {"potential", r.potential_before},
    });
  }
  nlohmann::json j{
      {"schema", "agnoboost/run-report-v1"},
      {"rounds", std::move(rounds_json)},
      {"rounds_completed", rounds_completed},
      {"truncated", truncated},
      {"selected_round", selected_round},
      {"holdout_correlations", holdout_correlations},
      {"final_potential", final_potential},
      {"train_accuracy", train_accuracy},
      {"labeled_used", labeled_used},
      {"unlabeled_used", unlabeled_used},
      {"holdout_used", holdout_used},
  };
  if (test_accuracy >= 0.0) j["test_accuracy"] = test_accuracy;
  return j;
}

}  // namespace agnoboost
