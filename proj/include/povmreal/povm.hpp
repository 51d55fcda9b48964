#pragma once

#include <string>

#include "povmreal/qmat.hpp"

namespace povmreal {

enum class Outcome : int { plus = +1, minus = -1 };

inline int sign(Outcome o) { return static_cast<int>(o); }

// Sharpness/biasedness pair of a dichotomic POVM, without the axis.
// Valid iff lambda >= 0 and |lambda| + |gamma| <= 1.
struct PovmParams {
  double lambda = 1.0;
  double gamma = 0.0;

  void validate(bool allow_negative_lambda = false) const;
};

// The most general two-outcome qubit measurement:
//   E(+-) = lambda * P(+-) + (1 +- gamma - lambda)/2 * I,
// with P(+-) = (I +- axis.sigma)/2.
//
// allow_negative_lambda is an escape hatch for exploring lambda < 0
// (normally rejected as unphysical).
struct DichotomicPovm {
  double lambda = 1.0;
  double gamma = 0.0;
  RealVec3 axis = {0.0, 0.0, 1.0};
  bool allow_negative_lambda = false;

  void validate() const;
  std::string to_json() const;  // {"lambda":..., "gamma":..., "axis":[x,y,z]}
};

// Effect operators with their PSD square roots cached for the Luders
// update.  e_plus + e_minus == I by construction.
struct EffectPair {
  ComplexMatrix e_plus{2}, e_minus{2};
  ComplexMatrix sqrt_plus{2}, sqrt_minus{2};

  const ComplexMatrix& effect(Outcome o) const { return o == Outcome::plus ? e_plus : e_minus; }
  const ComplexMatrix& sqrt(Outcome o) const { return o == Outcome::plus ? sqrt_plus : sqrt_minus; }
};

EffectPair make_effects(const DichotomicPovm& p);

// Tr(rho E_outcome).
double outcome_probability(const EffectPair& effects, const ComplexMatrix& rho, Outcome outcome);

// Generalized Luders instrument: rho -> sqrt(E) rho sqrt(E) / Tr(rho E).
// Throws when the outcome probability is below 1e-14.
struct LudersResult {
  ComplexMatrix post_state{2};
  double probability = 0.0;
};
LudersResult luders_update(const EffectPair& effects, const ComplexMatrix& rho, Outcome outcome);

}  // namespace povmreal
