#include "agnoboost/relabel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "agnoboost/error.hpp"

namespace agnoboost {

namespace {

// Shared core of the plain and covariate builders: a two-part mixture with
// the given labeled mass, pseudo-labeled mass 1 - labeled_mass.
WeightedLabeledSet build_mixture(const Ensemble& ensemble,
                                 const WeightedLabeledSet& labeled,
                                 const DataMatrix& unlabeled,
                                 PotentialFamily family, double labeled_mass,
                                 const RelabelMode& mode, Rng* rng,
                                 const char* op) {
  if (!family.label_free_split())
    throw std::invalid_argument(std::string(op) +
                                ": needs a label-free-split potential family");
  if (labeled.empty() || !(labeled.total_weight() > 0.0))
    throw std::invalid_argument(std::string(op) + ": labeled set is empty");
  const bool has_pseudo = labeled_mass < 1.0;
  if (has_pseudo && unlabeled.rows() == 0)
    throw std::invalid_argument(std::string(op) + ": unlabeled pool is empty");
  if (has_pseudo && labeled.dim() != unlabeled.cols())
    throw std::invalid_argument(std::string(op) + ": dimension mismatch");

  WeightedLabeledSet out(labeled.dim());

  if (mode.kind == RelabelMode::Kind::Fractional) {
    out.reserve(labeled.size() + 2 * unlabeled.rows());
    const double lab_scale = labeled_mass / labeled.total_weight();
    for (std::size_t i = 0; i < labeled.size(); ++i)
      out.add(labeled.x(i), labeled.y(i), lab_scale * labeled.weight(i));
    if (has_pseudo) {
      const double u =
          (1.0 - labeled_mass) / static_cast<double>(unlabeled.rows());
      for (std::size_t r = 0; r < unlabeled.rows(); ++r) {
        const auto x = unlabeled.row(r);
        const double p = pseudo_label_prob(family, ensemble.evaluate(x));
        out.add(x, 1, u * p);
        out.add(x, -1, u * (1.0 - p));
      }
    }
    return out;
  }

  if (mode.sample_count < 1)
    throw std::invalid_argument(std::string(op) +
                                ": monte carlo mode needs sample_count >= 1");
  if (rng == nullptr)
    throw std::invalid_argument(std::string(op) +
                                ": monte carlo mode needs a generator");
  const std::size_t m = mode.sample_count;
  const double w = 1.0 / static_cast<double>(m);
  out.reserve(m);
  CumulativePicker lab_picker(labeled.weights());
  for (std::size_t k = 0; k < m; ++k) {
    if (rng->uniform() < labeled_mass) {
      const std::size_t i = lab_picker.pick(*rng);
      out.add(labeled.x(i), labeled.y(i), w);
    } else {
      const std::size_t r = rng->uniform_index(unlabeled.rows());
      const auto x = unlabeled.row(r);
      const double p = pseudo_label_prob(family, ensemble.evaluate(x));
      out.add(x, rng->bernoulli(p) ? 1 : -1, w);
    }
  }
  return out;
}

}  // namespace

WeightedLabeledSet build_plain(const Ensemble& ensemble,
                               const WeightedLabeledSet& labeled,
                               const DataMatrix& unlabeled,
                               PotentialFamily family, const RelabelMode& mode,
                               Rng* rng) {
  return build_mixture(ensemble, labeled, unlabeled, family, 0.5, mode, rng,
                       "build_plain");
}

WeightedLabeledSet build_covariate(const Ensemble& ensemble,
                                   const WeightedLabeledSet& labeled,
                                   const DataMatrix& unlabeled_from_q,
                                   double ratio_bound, PotentialFamily family,
                                   const RelabelMode& mode, Rng* rng,
                                   CovariateMixture mixture) {
  if (!(ratio_bound >= 1.0) || !std::isfinite(ratio_bound))
    throw std::invalid_argument("build_covariate: ratio bound must be >= 1");
  const double labeled_mass = mixture == CovariateMixture::CorrelationIdentity
                                  ? 1.0 / (1.0 + ratio_bound)
                                  : 1.0 / ratio_bound;
  return build_mixture(ensemble, labeled, unlabeled_from_q, family,
                       labeled_mass, mode, rng, "build_covariate");
}

WeightedLabeledSet build_pab(const Ensemble& ensemble,
                             const WeightedLabeledSet& fresh_labeled,
                             const RelabelMode& mode, Rng* rng) {
  if (fresh_labeled.empty() || !(fresh_labeled.total_weight() > 0.0))
    throw std::invalid_argument("build_pab: labeled batch is empty");

  WeightedLabeledSet out(fresh_labeled.dim());
  const double total = fresh_labeled.total_weight();

  if (mode.kind == RelabelMode::Kind::Fractional) {
    out.reserve(2 * fresh_labeled.size());
    for (std::size_t i = 0; i < fresh_labeled.size(); ++i) {
      const auto x = fresh_labeled.x(i);
      const int y = fresh_labeled.y(i);
      const double keep = mada_keep_weight({ensemble.evaluate(x), y});
      const double w = fresh_labeled.weight(i) / total;
      out.add(x, y, w * (1.0 + keep) / 2.0);
      out.add(x, -y, w * (1.0 - keep) / 2.0);
    }
    return out;
  }

  if (rng == nullptr)
    throw std::invalid_argument("build_pab: monte carlo mode needs a generator");
  out.reserve(fresh_labeled.size());
  for (std::size_t i = 0; i < fresh_labeled.size(); ++i) {
    const auto x = fresh_labeled.x(i);
    const int y = fresh_labeled.y(i);
    const double keep = mada_keep_weight({ensemble.evaluate(x), y});
    const int label = rng->bernoulli(keep) ? y : rng->rademacher();
    out.add(x, label, fresh_labeled.weight(i) / total);
  }
  return out;
}

// ---------------------------------------------------------------------------
// ReuseSampler
// ---------------------------------------------------------------------------

ReuseSampler::ReuseSampler(double eta, double sigma, PotentialFamily family)
    : eta_(eta), sigma_(sigma) {
  if (!family.twice_differentiable())
    throw std::invalid_argument(
        "reuse distribution needs a twice-differentiable potential family");
  if (!(eta > 0.0)) throw std::invalid_argument("reuse: eta must be > 0");
  if (!(sigma > 0.0) || sigma > 1.0)
    throw std::invalid_argument("reuse: sigma must lie in (0, 1]");
}

void ReuseSampler::begin_round(const DataMatrix& pool,
                               const Ensemble& ensemble) {
  if (pool.rows() == 0)
    throw std::invalid_argument("reuse: round pool is empty");
  const std::size_t t = pools_.size() + 1;
  if (ensemble.size() != t - 1)
    throw std::invalid_argument(
        "reuse: ensemble must hold exactly one term per completed round");

  PoolState state;
  state.pool = pool;
  if (t >= 2) {
    state.base.resize(pool.rows());
    state.direction.resize(pool.rows());
    for (std::size_t r = 0; r < pool.rows(); ++r) {
      const auto [before_last, last] = ensemble.eval_last_two(pool.row(r));
      state.base[r] = before_last;                      // H_{t-1}(x)
      state.direction[r] = (last - before_last) / eta_; // h_{t-1}(x)
    }
  }
  pools_.push_back(std::move(state));
  round_histogram_.assign(pools_.size(), 0);
}

double ReuseSampler::reuse_label_prob(double prefix_value, double direction,
                                      double eta_prime, double eta,
                                      double sigma) {
  const auto ph = PotentialFamily::pseudo_huber();
  const double denom = 2.0 * (eta + sigma);
  return 0.5 - sigma * psi_prime(ph, prefix_value) / denom -
         eta * psi_second(ph, prefix_value + eta_prime * direction) *
             direction / denom;
}

ReuseSampler::Draw ReuseSampler::draw(Rng& rng) {
  if (pools_.empty())
    throw std::invalid_argument("reuse: no round has begun");

  // P(s = t) = sigma, recursing toward round 1 which absorbs the remainder.
  std::size_t s = pools_.size();
  while (s > 1 && !rng.bernoulli(sigma_)) --s;
  round_histogram_[s - 1] += 1;

  const PoolState& state = pools_[s - 1];
  const std::size_t r = rng.uniform_index(state.pool.rows());
  const auto xrow = state.pool.row(r);

  Draw d;
  d.x.assign(xrow.begin(), xrow.end());
  d.source_round = s;
  if (s == 1) {
    d.label = rng.rademacher();
    return d;
  }
  const double eta_prime = rng.uniform(0.0, eta_);
  double p = reuse_label_prob(state.base[r], state.direction[r], eta_prime,
                              eta_, sigma_);
  if (p < 0.0 || p > 1.0) {
    ++clamp_count_;
    p = std::clamp(p, 0.0, 1.0);
  }
  d.label = rng.bernoulli(p) ? 1 : -1;
  return d;
}

WeightedLabeledSet ReuseSampler::build_round_set(
    const WeightedLabeledSet& labeled, double labeled_mix_weight,
    std::size_t m, Rng& rng) {
  if (labeled.empty() || !(labeled.total_weight() > 0.0))
    throw std::invalid_argument("reuse: labeled set is empty");
  if (!(labeled_mix_weight > 0.0) || !(labeled_mix_weight < 1.0))
    throw std::invalid_argument("reuse: labeled mix weight must lie in (0, 1)");
  if (m < 1) throw std::invalid_argument("reuse: sample count must be >= 1");

  WeightedLabeledSet out(labeled.dim());
  out.reserve(m);
  const double w = 1.0 / static_cast<double>(m);
  CumulativePicker picker(labeled.weights());
  for (std::size_t k = 0; k < m; ++k) {
    if (rng.uniform() < labeled_mix_weight) {
      const std::size_t i = picker.pick(rng);
      out.add(labeled.x(i), labeled.y(i), w);
    } else {
      const Draw d = draw(rng);
      out.add(d.x, d.label, w);
    }
  }
  return out;
}

}  // namespace agnoboost
