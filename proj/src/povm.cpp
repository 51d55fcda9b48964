#include "povmreal/povm.hpp"

#include <cmath>

#include "json.hpp"

namespace povmreal {

namespace {
constexpr double kValidityTol = 1e-12;
}

void PovmParams::validate(bool allow_negative_lambda) const {
  if (!std::isfinite(lambda) || !std::isfinite(gamma))
    throw ValidationError("lambda and gamma must be finite");
  if (lambda < 0.0 && !allow_negative_lambda)
    throw ValidationError("lambda must be >= 0");
  if (std::abs(lambda) + std::abs(gamma) > 1.0 + kValidityTol)
    throw ValidationError("|lambda|+|gamma| must be <= 1");
}

void DichotomicPovm::validate() const {
  PovmParams{lambda, gamma}.validate(allow_negative_lambda);
  if (!axis.is_unit()) throw ValidationError("measurement axis must be a unit vector");
}

std::string DichotomicPovm::to_json() const {
  nlohmann::json j;
  j["lambda"] = lambda;
  j["gamma"] = gamma;
  j["axis"] = {axis.x, axis.y, axis.z};
  return j.dump();
}

EffectPair make_effects(const DichotomicPovm& p) {
  p.validate();
  const ComplexMatrix ns = axis_dot_sigma(p.axis);
  const ComplexMatrix proj_plus = (identity2() + ns).scaled(0.5);
  const ComplexMatrix proj_minus = (identity2() - ns).scaled(0.5);

  EffectPair e;
  e.e_plus = proj_plus.scaled(p.lambda) + identity2().scaled((1.0 + p.gamma - p.lambda) / 2.0);
  e.e_minus = proj_minus.scaled(p.lambda) + identity2().scaled((1.0 - p.gamma - p.lambda) / 2.0);
  e.sqrt_plus = psd_sqrt(e.e_plus);
  e.sqrt_minus = psd_sqrt(e.e_minus);
  return e;
}

double outcome_probability(const EffectPair& effects, const ComplexMatrix& rho, Outcome outcome) {
  return multiply(rho, effects.effect(outcome)).trace().real();
}

LudersResult luders_update(const EffectPair& effects, const ComplexMatrix& rho, Outcome outcome) {
  const double p = outcome_probability(effects, rho, outcome);
  if (p <= 1e-14) throw ValidationError("cannot condition on a zero-probability outcome");
  const ComplexMatrix& sq = effects.sqrt(outcome);
  LudersResult out;
  out.probability = p;
  out.post_state = multiply(multiply(sq, rho), sq).scaled(1.0 / p);
  return out;
}

}  // namespace povmreal
