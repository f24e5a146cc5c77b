#include "agnoboost/hypothesis.hpp"

#include <stdexcept>
#include <string>

#include "agnoboost/error.hpp"

namespace agnoboost {

namespace {

void require_pm_one(int v, const char* what) {
  if (v != 1 && v != -1)
    throw std::invalid_argument(std::string(what) + " must be -1 or +1");
}

}  // namespace

int predict_base(const BaseHypothesis& h, std::span<const double> x) {
  if (const auto* s = std::get_if<Stump>(&h)) {
    require_pm_one(s->polarity, "stump polarity");
    if (s->feature >= x.size())
      throw std::invalid_argument("stump feature index " +
                                  std::to_string(s->feature) +
                                  " out of range for dimension " +
                                  std::to_string(x.size()));
    return x[s->feature] >= s->threshold ? s->polarity : -s->polarity;
  }
  if (const auto* p = std::get_if<Parity>(&h)) {
    require_pm_one(p->sign, "parity sign");
    int prod = p->sign;
    for (std::size_t idx : p->subset) {
      if (idx >= x.size())
        throw std::invalid_argument("parity feature index " +
                                    std::to_string(idx) +
                                    " out of range for dimension " +
                                    std::to_string(x.size()));
      const double v = x[idx];
      if (v == 1.0) {
        // no-op
      } else if (v == -1.0) {
        prod = -prod;
      } else {
        throw std::invalid_argument(
            "parity hypotheses require features in {-1,+1}");
      }
    }
    return prod;
  }
  const auto& c = std::get<Constant>(h);
  require_pm_one(c.value, "constant value");
  return c.value;
}

PredictFn predictor(const BaseHypothesis& h) {
  return [h](std::span<const double> x) { return predict_base(h, x); };
}

double Ensemble::evaluate(std::span<const double> x) const {
  double v = 0.0;
  for (const auto& term : terms_) {
    if (const auto* w = std::get_if<WeakTerm>(&term)) {
      v += w->coef * predict_base(w->hypothesis, x);
    } else {
      v -= std::get<SignDescentTerm>(term).coef * sign_of(v);
    }
  }
  return v;
}

std::vector<double> Ensemble::eval_prefixes(std::span<const double> x) const {
  std::vector<double> out;
  out.reserve(terms_.size() + 1);
  double v = 0.0;
  out.push_back(v);
  for (const auto& term : terms_) {
    if (const auto* w = std::get_if<WeakTerm>(&term)) {
      v += w->coef * predict_base(w->hypothesis, x);
    } else {
      v -= std::get<SignDescentTerm>(term).coef * sign_of(v);
    }
    out.push_back(v);
  }
  return out;
}

double Ensemble::prefix_value(std::size_t t, std::span<const double> x) const {
  if (t < 1 || t > terms_.size() + 1)
    throw std::out_of_range("prefix round index out of range");
  double v = 0.0;
  for (std::size_t k = 0; k + 1 < t; ++k) {
    if (const auto* w = std::get_if<WeakTerm>(&terms_[k])) {
      v += w->coef * predict_base(w->hypothesis, x);
    } else {
      v -= std::get<SignDescentTerm>(terms_[k]).coef * sign_of(v);
    }
  }
  return v;
}

std::pair<double, double> Ensemble::eval_last_two(
    std::span<const double> x) const {
  double prev = 0.0;
  double v = 0.0;
  for (const auto& term : terms_) {
    prev = v;
    if (const auto* w = std::get_if<WeakTerm>(&term)) {
      v += w->coef * predict_base(w->hypothesis, x);
    } else {
      v -= std::get<SignDescentTerm>(term).coef * sign_of(v);
    }
  }
  return {prev, v};
}

int Ensemble::predict_at_round(std::size_t t, std::span<const double> x) const {
  return sign_of(prefix_value(t, x));
}

nlohmann::json hypothesis_to_json(const BaseHypothesis& h) {
  nlohmann::json j;
  if (const auto* s = std::get_if<Stump>(&h)) {
    j["type"] = "stump";
    j["feature"] = s->feature;
    j["threshold"] = s->threshold;
    j["polarity"] = s->polarity;
  } else if (const auto* p = std::get_if<Parity>(&h)) {
    j["type"] = "parity";
    j["subset"] = p->subset;
    j["sign"] = p->sign;
  } else {
    j["type"] = "constant";
    j["value"] = std::get<Constant>(h).value;
  }
  return j;
}

BaseHypothesis hypothesis_from_json(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "stump") {
    Stump s;
    s.feature = j.at("feature").get<std::size_t>();
    s.threshold = j.at("threshold").get<double>();
    s.polarity = j.at("polarity").get<int>();
    require_pm_one(s.polarity, "stump polarity");
    return s;
  }
  if (type == "parity") {
    Parity p;
    p.subset = j.at("subset").get<std::vector<std::size_t>>();
    p.sign = j.at("sign").get<int>();
    require_pm_one(p.sign, "parity sign");
    return p;
  }
  if (type == "constant") {
    Constant c;
    c.value = j.at("value").get<int>();
    require_pm_one(c.value, "constant value");
    return c;
  }
  throw DataError("unknown hypothesis type '" + type + "'");
}

nlohmann::json Ensemble::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& term : terms_) {
    nlohmann::json j;
    if (const auto* w = std::get_if<WeakTerm>(&term)) {
      j["kind"] = "weak";
      j["coef"] = w->coef;
      j["h"] = hypothesis_to_json(w->hypothesis);
    } else {
      j["kind"] = "sign_descent";
      j["coef"] = std::get<SignDescentTerm>(term).coef;
    }
    terms.push_back(std::move(j));
  }
  return nlohmann::json{{"terms", std::move(terms)}};
}

Ensemble Ensemble::from_json(const nlohmann::json& j) {
  Ensemble e;
  for (const auto& term : j.at("terms")) {
    const std::string kind = term.at("kind").get<std::string>();
    if (kind == "weak") {
      e.append_weak(term.at("coef").get<double>(),
                    hypothesis_from_json(term.at("h")));
    } else if (kind == "sign_descent") {
      e.append_sign_descent(term.at("coef").get<double>());
    } else {
      throw DataError("unknown ensemble term kind '" + kind + "'");
    }
  }
  return e;
}

PredictFn sign_predictor(const Ensemble& h) {
  return [&h](std::span<const double> x) { return sign_of(h.evaluate(x)); };
}

PredictFn sign_predictor_at(const Ensemble& h, std::size_t round) {
  return [&h, round](std::span<const double> x) {
    return h.predict_at_round(round, x);
  };
}

}  // namespace agnoboost
