#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "json.hpp"

namespace agnoboost {

// sign(z) = +1 iff z >= 0 (the convention used everywhere in this library).
inline int sign_of(double z) { return z >= 0.0 ? 1 : -1; }

// ---------------------------------------------------------------------------
// Base hypotheses
// ---------------------------------------------------------------------------

// Axis-aligned threshold vote: polarity if x[feature] >= threshold, else the
// opposite. Ties at the threshold go with the polarity, matching sign_of.
struct Stump {
  std::size_t feature = 0;
  double threshold = 0.0;
  int polarity = 1;
};

// Signed parity over a subset of {-1,+1} coordinates: sign * prod x[i].
struct Parity {
  std::vector<std::size_t> subset;  // sorted, distinct
  int sign = 1;
};

struct Constant {
  int value = 1;
};

using BaseHypothesis = std::variant<Stump, Parity, Constant>;

int predict_base(const BaseHypothesis& h, std::span<const double> x);

nlohmann::json hypothesis_to_json(const BaseHypothesis& h);
BaseHypothesis hypothesis_from_json(const nlohmann::json& j);

// Generic classifier handle for code that also needs to evaluate sign(H).
using PredictFn = std::function<int(std::span<const double>)>;

PredictFn predictor(const BaseHypothesis& h);

// ---------------------------------------------------------------------------
// Ensemble
// ---------------------------------------------------------------------------

struct WeakTerm {
  double coef = 0.0;
  BaseHypothesis hypothesis;
};

// Positional descent step: subtracts coef * sign(partial sum of all earlier
// terms). The referenced prefix is implicit in the term's position, so
// evaluation is a single left-to-right pass.
struct SignDescentTerm {
  double coef = 0.0;
};

using EnsembleTerm = std::variant<WeakTerm, SignDescentTerm>;

// Ordered sum of weighted base hypotheses and sign-descent steps. The empty
// ensemble evaluates to 0 everywhere. Prefix t (1-based) is the value after
// the first t-1 terms, so prefix 1 is always 0. Construction is
// single-writer; evaluation of a constructed ensemble is safe concurrently.
class Ensemble {
 public:
  Ensemble() = default;

  std::size_t size() const { return terms_.size(); }
  const std::vector<EnsembleTerm>& terms() const { return terms_; }

  void append_weak(double coef, BaseHypothesis h) {
    terms_.push_back(WeakTerm{coef, std::move(h)});
  }
  void append_sign_descent(double coef) {
    terms_.push_back(SignDescentTerm{coef});
  }

  // Final value H_{T+1}(x).
  double evaluate(std::span<const double> x) const;

  // All prefix values [H_1(x), ..., H_{T+1}(x)]; size() + 1 entries.
  std::vector<double> eval_prefixes(std::span<const double> x) const;

  // H_t(x) for t in [1, size()+1].
  double prefix_value(std::size_t t, std::span<const double> x) const;

  // (H_T(x), H_{T+1}(x)): the last two prefix values. (0, 0) when empty.
  std::pair<double, double> eval_last_two(std::span<const double> x) const;

  // sign(H_t(x)) for t in [1, size()+1].
  int predict_at_round(std::size_t t, std::span<const double> x) const;

  nlohmann::json to_json() const;
  static Ensemble from_json(const nlohmann::json& j);

 private:
  std::vector<EnsembleTerm> terms_;
};

// x -> sign(H(x)) over the full ensemble.
PredictFn sign_predictor(const Ensemble& h);

// x -> sign(H_t(x)) for a fixed round t.
PredictFn sign_predictor_at(const Ensemble& h, std::size_t round);

}  // namespace agnoboost
