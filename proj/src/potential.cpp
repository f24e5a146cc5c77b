#include "agnoboost/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace agnoboost {

namespace {

void require_split(PotentialFamily family, const char* op) {
  if (!family.label_free_split())
    throw std::invalid_argument(std::string(op) +
                                ": unsupported for the madaboost family "
                                "(no label-free split)");
}

void require_label(int y) {
  if (y != 1 && y != -1)
    throw std::invalid_argument("margin label must be -1 or +1");
}

}  // namespace

const char* PotentialFamily::name() const {
  switch (kind) {
    case PotentialKind::Huber: return "huber";
    case PotentialKind::PseudoHuber: return "pseudo_huber";
    case PotentialKind::Madaboost: return "madaboost";
  }
  return "?";
}

double psi(PotentialFamily family, double z) {
  require_split(family, "psi");
  if (family.kind == PotentialKind::Huber) {
    const double a = std::abs(z);
    return a <= 1.0 ? 0.5 * z * z : a - 0.5;
  }
  return std::hypot(1.0, z) - 1.0;  // hypot: 1 + z^2 would overflow first
}

double psi_prime(PotentialFamily family, double z) {
  require_split(family, "psi_prime");
  if (family.kind == PotentialKind::Huber) return std::clamp(z, -1.0, 1.0);
  return z / std::hypot(1.0, z);
}

double psi_second(PotentialFamily family, double z) {
  if (!family.twice_differentiable())
    throw std::invalid_argument(
        "psi_second: family is not twice differentiable (pseudo_huber only)");
  const double t = 1.0 + z * z;
  return 1.0 / (t * std::sqrt(t));
}

double phi(PotentialFamily family, Margin m) {
  require_label(m.y);
  if (family.label_free_split()) return psi(family, m.z) - m.y * m.z;
  const double zy = m.z * m.y;
  return zy >= 0.0 ? std::exp(-zy) : 1.0 - zy;
}

double phi_prime(PotentialFamily family, Margin m) {
  require_label(m.y);
  if (family.label_free_split()) return psi_prime(family, m.z) - m.y;
  const double zy = m.z * m.y;
  return zy >= 0.0 ? -m.y * std::exp(-zy) : -static_cast<double>(m.y);
}

double pseudo_label_prob(PotentialFamily family, double z) {
  require_split(family, "pseudo_label_prob");
  return (1.0 - psi_prime(family, z)) / 2.0;
}

double mada_keep_weight(Margin m) {
  require_label(m.y);
  const double zy = m.z * m.y;
  return zy >= 0.0 ? std::exp(-zy) : 1.0;
}

double empirical_directional_derivative(PotentialFamily family,
                                        const Ensemble& ensemble,
                                        const PredictFn& h,
                                        const WeightedLabeledSet& labeled,
                                        const DataMatrix& unlabeled) {
  require_split(family, "empirical_directional_derivative");
  if (labeled.empty() || unlabeled.rows() == 0)
    throw std::invalid_argument(
        "empirical_directional_derivative: both sets must be nonempty");

  double unlab = 0.0;
  for (std::size_t r = 0; r < unlabeled.rows(); ++r) {
    const auto x = unlabeled.row(r);
    unlab += psi_prime(family, ensemble.evaluate(x)) * h(x);
  }
  unlab /= static_cast<double>(unlabeled.rows());

  double lab = 0.0;
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    lab += labeled.weight(i) * labeled.y(i) * h(labeled.x(i));
  }
  lab /= labeled.total_weight();

  return unlab - lab;
}

double empirical_split_potential(PotentialFamily family,
                                 const Ensemble& ensemble,
                                 const WeightedLabeledSet& labeled,
                                 const DataMatrix& unlabeled) {
  require_split(family, "empirical_split_potential");
  if (labeled.empty() || unlabeled.rows() == 0)
    throw std::invalid_argument(
        "empirical_split_potential: both sets must be nonempty");

  double unlab = 0.0;
  for (std::size_t r = 0; r < unlabeled.rows(); ++r)
    unlab += psi(family, ensemble.evaluate(unlabeled.row(r)));
  unlab /= static_cast<double>(unlabeled.rows());

  double lab = 0.0;
  for (std::size_t i = 0; i < labeled.size(); ++i)
    lab += labeled.weight(i) * labeled.y(i) * ensemble.evaluate(labeled.x(i));
  lab /= labeled.total_weight();

  return unlab - lab;
}

void write_potential_curve(std::ostream& out, double z_min, double z_max,
                           double step) {
  if (!(z_min < z_max) || !(step > 0.0))
    throw std::invalid_argument(
        "potential curve: need z_min < z_max and step > 0");
  const auto huber = PotentialFamily::huber();
  const auto mada = PotentialFamily::madaboost();
  const long count =
      static_cast<long>(std::floor((z_max - z_min) / step)) + 1;
  const auto old_precision = out.precision();
  out.precision(std::numeric_limits<double>::max_digits10);
  out << "z,psi_huber,half_phi_huber,phi_mada\n";
  for (long i = 0; i < count; ++i) {
    const double z = z_min + static_cast<double>(i) * step;
    out << z << ',' << psi(huber, z) << ',' << phi(huber, {z, 1}) / 2.0 << ','
        << phi(mada, {z, 1}) << '\n';
  }
  out.precision(old_precision);
}

}  // namespace agnoboost
