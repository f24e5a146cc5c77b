#pragma once

#include <iosfwd>

#include "agnoboost/hypothesis.hpp"
#include "agnoboost/matrix.hpp"
#include "agnoboost/weighted_set.hpp"

namespace agnoboost {

enum class PotentialKind { Huber, PseudoHuber, Madaboost };

// Potential families phi(z, y). The split families decompose as
// phi(z, y) = psi(z) - y z, so the derivative separates into a label-free
// part (estimable from unlabeled data) and a label-linear part. The
// Madaboost potential does not decompose and only supports phi/phi'.
struct PotentialFamily {
  PotentialKind kind = PotentialKind::Huber;

  // true when phi' splits as psi'(z) - y (Huber, PseudoHuber)
  bool label_free_split() const { return kind != PotentialKind::Madaboost; }
  // true when psi'' exists everywhere (PseudoHuber only; Huber's psi'' jumps
  // at |z| = 1)
  bool twice_differentiable() const { return kind == PotentialKind::PseudoHuber; }

  const char* name() const;

  static PotentialFamily huber() { return {PotentialKind::Huber}; }
  static PotentialFamily pseudo_huber() { return {PotentialKind::PseudoHuber}; }
  static PotentialFamily madaboost() { return {PotentialKind::Madaboost}; }

  bool operator==(const PotentialFamily&) const = default;
};

struct Margin {
  double z = 0.0;  // ensemble output H(x)
  int y = 1;       // label, exactly -1 or +1
};

// Label-free part psi(z). Huber: z^2/2 for |z| <= 1, |z| - 1/2 beyond.
// PseudoHuber: sqrt(1 + z^2) - 1. Rejects Madaboost.
double psi(PotentialFamily family, double z);

// psi'(z); always in [-1, 1] with z * psi'(z) >= 0.
double psi_prime(PotentialFamily family, double z);

// psi''(z) = (1 + z^2)^{-3/2}; PseudoHuber only.
double psi_second(PotentialFamily family, double z);

double phi(PotentialFamily family, Margin m);

// d phi / d z. Split families: psi'(z) - y. Madaboost: -y e^{-zy} for
// zy >= 0, else -y.
double phi_prime(PotentialFamily family, Margin m);

// Probability that the pseudo-label for an unlabeled point with ensemble
// value z is +1: (1 - psi'(z)) / 2.
double pseudo_label_prob(PotentialFamily family, double z);

// Probability of keeping the true label in the Madaboost relabeling:
// -y phi'_MADA(z, y) = e^{-zy} for zy >= 0, else 1.
double mada_keep_weight(Margin m);

// Split empirical estimate of the directional derivative of the potential
// along h: mean over the unlabeled pool of psi'(H(x)) h(x) minus the
// weighted mean over the labeled set of y h(x).
double empirical_directional_derivative(PotentialFamily family,
                                        const Ensemble& ensemble,
                                        const PredictFn& h,
                                        const WeightedLabeledSet& labeled,
                                        const DataMatrix& unlabeled);

// Split empirical potential over the same two pools: mean psi(H(x)) over the
// unlabeled pool minus the weighted mean of y H(x) over the labeled set.
double empirical_split_potential(PotentialFamily family,
                                 const Ensemble& ensemble,
                                 const WeightedLabeledSet& labeled,
                                 const DataMatrix& unlabeled);

// CSV rows (z, psi_huber, phi_huber(z,1)/2, phi_mada(z,1)) over an inclusive
// grid; one header line, then floor((z_max - z_min)/step) + 1 data rows.
void write_potential_curve(std::ostream& out, double z_min, double z_max,
                           double step);

}  // namespace agnoboost
