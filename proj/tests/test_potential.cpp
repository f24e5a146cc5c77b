#include "agnoboost/potential.hpp"

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "support/oracles.hpp"

using namespace agnoboost;

namespace {
const PotentialFamily kHuber = PotentialFamily::huber();
const PotentialFamily kPseudo = PotentialFamily::pseudo_huber();
const PotentialFamily kMada = PotentialFamily::madaboost();
}  // namespace

TEST_CASE("family capabilities") {
  CHECK(kHuber.label_free_split());
  CHECK(kPseudo.label_free_split());
  CHECK_FALSE(kMada.label_free_split());
  CHECK(kPseudo.twice_differentiable());
  CHECK_FALSE(kHuber.twice_differentiable());
  CHECK_FALSE(kMada.twice_differentiable());
}

TEST_CASE("psi values") {
  CHECK(psi(kHuber, 0.0) == 0.0);
  CHECK(psi(kHuber, 2.0) == doctest::Approx(1.5));
  CHECK(psi(kHuber, 0.5) == doctest::Approx(0.125));
  CHECK(psi(kPseudo, 1.0) == doctest::Approx(std::sqrt(2.0) - 1.0));
  CHECK_THROWS_AS((void)psi(kMada, 1.0), std::invalid_argument);
}

TEST_CASE("psi_prime values") {
  CHECK(psi_prime(kHuber, 0.5) == doctest::Approx(0.5));
  CHECK(psi_prime(kHuber, -3.0) == doctest::Approx(-1.0));
  CHECK(psi_prime(kPseudo, 1.0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(psi_prime(kHuber, 0.0) == 0.0);
  CHECK(psi_prime(kPseudo, 0.0) == 0.0);
  CHECK_THROWS_AS((void)psi_prime(kMada, 0.0), std::invalid_argument);
  // stays finite where 1 + z^2 overflows
  CHECK(psi_prime(kPseudo, 1e200) == doctest::Approx(1.0));
  CHECK(psi_prime(kPseudo, -1e200) == doctest::Approx(-1.0));
  CHECK(psi_second(kPseudo, 1e200) == 0.0);
}

TEST_CASE("psi_second values") {
  CHECK(psi_second(kPseudo, 0.0) == doctest::Approx(1.0));
  CHECK(psi_second(kPseudo, 1.0) == doctest::Approx(std::pow(2.0, -1.5)));
  CHECK_THROWS_AS((void)psi_second(kHuber, 0.5), std::invalid_argument);
  CHECK_THROWS_AS((void)psi_second(kMada, 0.5), std::invalid_argument);
}

TEST_CASE("phi values") {
  CHECK(phi(kHuber, {0.0, 1}) == 0.0);
  CHECK(phi(kHuber, {2.0, 1}) == doctest::Approx(-0.5));
  CHECK(phi(kMada, {0.0, 1}) == doctest::Approx(1.0));
  CHECK(phi(kMada, {-1.0, 1}) == doctest::Approx(2.0));
  CHECK_THROWS_AS((void)phi(kHuber, {0.0, 0}), std::invalid_argument);
}

TEST_CASE("phi_prime values") {
  CHECK(phi_prime(kHuber, {0.0, 1}) == doctest::Approx(-1.0));
  CHECK(phi_prime(kHuber, {-0.5, 1}) == doctest::Approx(-1.5));
  CHECK(phi_prime(kMada, {1.0, 1}) == doctest::Approx(-std::exp(-1.0)));
}

TEST_CASE("pseudo label probabilities") {
  CHECK(pseudo_label_prob(kHuber, 0.0) == doctest::Approx(0.5));
  CHECK(pseudo_label_prob(kHuber, 1.5) == doctest::Approx(0.0));
  CHECK(pseudo_label_prob(kHuber, -0.5) == doctest::Approx(0.75));
  CHECK_THROWS_AS((void)pseudo_label_prob(kMada, 0.0), std::invalid_argument);

  // p(z) + p(-z) = 1 follows from odd psi'
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double z = rng.uniform(-10.0, 10.0);
    for (auto f : {kHuber, kPseudo}) {
      CHECK(pseudo_label_prob(f, z) + pseudo_label_prob(f, -z) ==
            doctest::Approx(1.0).epsilon(1e-12));
      const double p = pseudo_label_prob(f, z);
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
    }
  }
}

TEST_CASE("mada keep weight") {
  CHECK(mada_keep_weight({0.0, 1}) == doctest::Approx(1.0));
  CHECK(mada_keep_weight({1.0, 1}) == doctest::Approx(std::exp(-1.0)));
  CHECK(mada_keep_weight({-2.0, 1}) == doctest::Approx(1.0));
  Rng rng(12);
  for (int i = 0; i < 1000; ++i) {
    const double w = mada_keep_weight({rng.uniform(-8.0, 8.0), rng.rademacher()});
    CHECK(w > 0.0);
    CHECK(w <= 1.0);
  }
}

TEST_CASE("phi_prime magnitude bounds") {
  Rng rng(13);
  for (int i = 0; i < 2000; ++i) {
    const double z = rng.uniform(-10.0, 10.0);
    const int y = rng.rademacher();
    CHECK(std::abs(phi_prime(kMada, {z, y})) <= 1.0 + 1e-15);
    CHECK(std::abs(phi_prime(kHuber, {z, y})) <= 2.0);
    CHECK(std::abs(phi_prime(kPseudo, {z, y})) <= 2.0);
  }
}

TEST_CASE("derivative bound, sign condition, and smoothness") {
  Rng rng(14);
  for (auto f : {kHuber, kPseudo}) {
    for (int i = 0; i < 20000; ++i) {
      const double z = rng.uniform(-10.0, 10.0);
      const double d = psi_prime(f, z);
      CHECK(std::abs(d) <= 1.0);
      CHECK(z * d >= 0.0);
    }
    for (int i = 0; i < 20000; ++i) {
      const double z1 = rng.uniform(-10.0, 10.0);
      const double z2 = rng.uniform(-10.0, 10.0);
      CHECK(std::abs(psi_prime(f, z1) - psi_prime(f, z2)) <=
            std::abs(z1 - z2) + 1e-12);
    }
  }
}

TEST_CASE("derivatives agree with finite differences") {
  Rng rng(15);
  const double h = 1e-6;
  for (auto f : {kHuber, kPseudo}) {
    for (int i = 0; i < 1000; ++i) {
      const double z = rng.uniform(-5.0, 5.0);
      const double fd = oracles::centered_difference(
          [&](double v) { return psi(f, v); }, z, h);
      CHECK(std::abs(psi_prime(f, z) - fd) <= 1e-6);
    }
  }
  for (int i = 0; i < 1000; ++i) {
    const double z = rng.uniform(-5.0, 5.0);
    const double fd = oracles::centered_difference(
        [&](double v) { return psi_prime(kPseudo, v); }, z, h);
    CHECK(std::abs(psi_second(kPseudo, z) - fd) <= 1e-6);
  }
}

TEST_CASE("huber gap at the origin is exactly one half") {
  for (int y : {1, -1}) {
    double min_phi = phi(kHuber, {-10.0, y});
    for (double z = -10.0; z <= 10.0; z += 1e-3)
      min_phi = std::min(min_phi, phi(kHuber, {z, y}));
    CHECK(std::abs(phi(kHuber, {0.0, y}) - min_phi - 0.5) <= 1e-6);
  }
}

TEST_CASE("empirical directional derivative") {
  Ensemble zero;

  WeightedLabeledSet labeled(1);
  labeled.add(std::vector<double>{0.3}, 1, 1.0);
  DataMatrix pool(1);
  pool.append_row(std::vector<double>{0.3});

  const PredictFn plus_one = [](std::span<const double>) { return 1; };
  CHECK(empirical_directional_derivative(kHuber, zero, plus_one, labeled,
                                         pool) == doctest::Approx(-1.0));

  // sign(0) = +1 on balanced labels: both terms vanish or cancel
  WeightedLabeledSet balanced(1);
  balanced.add(std::vector<double>{0.1}, 1, 1.0);
  balanced.add(std::vector<double>{0.2}, -1, 1.0);
  CHECK(empirical_directional_derivative(kHuber, zero, sign_predictor(zero),
                                         balanced, pool) ==
        doctest::Approx(0.0));

  CHECK_THROWS_AS(empirical_directional_derivative(kMada, zero, plus_one,
                                                   labeled, pool),
                  std::invalid_argument);
  CHECK_THROWS_AS(empirical_directional_derivative(
                      kHuber, zero, plus_one, WeightedLabeledSet(1), pool),
                  std::invalid_argument);
}

TEST_CASE("directional derivative agrees with finite differences of the "
          "split potential") {
  // |d/de Phi(H + e h) at 0 - (Phi(H+eh) - Phi(H)) / e| <= e/2 by 1-smoothness
  Rng rng(16);
  const double eps = 1e-4;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t dim = 2;
    const Ensemble ensemble = oracles::random_ensemble(rng, dim, 5);
    const WeightedLabeledSet labeled = oracles::random_set(rng, 12, dim);
    const DataMatrix pool = oracles::random_pool(rng, 10, dim);
    const BaseHypothesis h = oracles::random_stump(rng, dim);

    for (auto f : {kHuber, kPseudo}) {
      const double deriv = empirical_directional_derivative(
          f, ensemble, predictor(h), labeled, pool);
      CHECK(std::abs(deriv) <= 2.0);
      Ensemble shifted = ensemble;
      shifted.append_weak(eps, h);
      const double fd = (empirical_split_potential(f, shifted, labeled, pool) -
                         empirical_split_potential(f, ensemble, labeled, pool)) /
                        eps;
      // the smoothness bound is achieved exactly inside the quadratic region
      CHECK(std::abs(deriv - fd) <= eps / 2.0 + 1e-10);
    }
  }
}

TEST_CASE("potential curve export") {
  std::ostringstream out;
  write_potential_curve(out, -2.0, 2.0, 0.5);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "z,psi_huber,half_phi_huber,phi_mada");
  std::vector<std::string> rows;
  while (std::getline(in, line))
    if (!line.empty()) rows.push_back(line);
  CHECK(rows.size() == 9);  // floor(4 / 0.5) + 1
  CHECK(rows[4] == "0,0,0,1");
  // z = 2: psi = 1.5, phi/2 = -0.25
  CHECK(rows[8].substr(0, 2) == "2,");
  CHECK(rows[8].find(",1.5,-0.25,") != std::string::npos);

  std::ostringstream bad;
  CHECK_THROWS_AS(write_potential_curve(bad, 2.0, -2.0, 0.5),
                  std::invalid_argument);
}
