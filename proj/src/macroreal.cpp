#include "povmreal/macroreal.hpp"

#include <cmath>

#include "json.hpp"

namespace povmreal {

namespace {

EffectPair z_effects(const PovmParams& params) {
  return make_effects({params.lambda, params.gamma, {0.0, 0.0, 1.0}});
}

ComplexMatrix evolve(const ComplexMatrix& rho, const ComplexMatrix& u, int steps) {
  ComplexMatrix out = rho;
  for (int k = 0; k < steps; ++k) out = conjugate(u, out);
  return out;
}

}  // namespace

void PrecessionSpec::validate() const {
  if (!(omega_dt >= 0.0 && omega_dt < 2.0 * M_PI))
    throw ValidationError("omega_dt must lie in [0, 2*pi)");
}

ComplexMatrix PrecessionSpec::step_unitary() const {
  validate();
  return rotation({1.0, 0.0, 0.0}, 2.0 * omega_dt);
}

JointDistribution sequential_joint(const QubitState& initial, const PrecessionSpec& spec,
                                   const PovmParams& params, int i, int j) {
  if (!(1 <= i && i < j && j <= 3))
    throw ValidationError("time indices must satisfy 1 <= i < j <= 3");
  const EffectPair effects = z_effects(params);
  const ComplexMatrix u = spec.step_unitary();
  const ComplexMatrix rho_i = evolve(initial.density(), u, i - 1);

  JointDistribution joint;
  for (Outcome first : {Outcome::plus, Outcome::minus}) {
    const double p1 = outcome_probability(effects, rho_i, first);
    if (p1 <= 1e-14) continue;  // branch never occurs
    const LudersResult upd = luders_update(effects, rho_i, first);
    const ComplexMatrix rho_j = evolve(upd.post_state, u, j - i);
    for (Outcome second : {Outcome::plus, Outcome::minus}) {
      const int fi = first == Outcome::plus ? 0 : 1;
      const int si = second == Outcome::plus ? 0 : 1;
      joint.probs[fi][si] = p1 * outcome_probability(effects, rho_j, second);
    }
  }
  return joint;
}

double correlator(const JointDistribution& joint) {
  return joint.probs[0][0] - joint.probs[0][1] - joint.probs[1][0] + joint.probs[1][1];
}

double k_lgi(const QubitState& initial, const PrecessionSpec& spec, const PovmParams& params) {
  const double c12 = correlator(sequential_joint(initial, spec, params, 1, 2));
  const double c23 = correlator(sequential_joint(initial, spec, params, 2, 3));
  const double c13 = correlator(sequential_joint(initial, spec, params, 1, 3));
  return c12 + c23 - c13;
}

double k_wlgi1(const QubitState& initial, const PrecessionSpec& spec, const PovmParams& params) {
  const JointDistribution j23 = sequential_joint(initial, spec, params, 2, 3);
  const JointDistribution j12 = sequential_joint(initial, spec, params, 1, 2);
  const JointDistribution j13 = sequential_joint(initial, spec, params, 1, 3);
  return j23.at(Outcome::plus, Outcome::plus) - j12.at(Outcome::minus, Outcome::plus) -
         j13.at(Outcome::plus, Outcome::plus);
}

double k_wlgi2(const QubitState& initial, const PrecessionSpec& spec, const PovmParams& params) {
  const JointDistribution j23 = sequential_joint(initial, spec, params, 2, 3);
  const JointDistribution j12 = sequential_joint(initial, spec, params, 1, 2);
  const JointDistribution j13 = sequential_joint(initial, spec, params, 1, 3);
  return j23.at(Outcome::minus, Outcome::minus) - j12.at(Outcome::plus, Outcome::minus) -
         j13.at(Outcome::minus, Outcome::minus);
}

double k_nsit(const QubitState& initial, const PrecessionSpec& spec, const PovmParams& params) {
  const JointDistribution j12 = sequential_joint(initial, spec, params, 1, 2);
  const EffectPair effects = z_effects(params);
  // undisturbed marginal: evolve straight to t_2, no t_1 interaction
  const ComplexMatrix rho_2 = conjugate(spec.step_unitary(), initial.density());
  const double p2_plus = outcome_probability(effects, rho_2, Outcome::plus);
  return j12.at(Outcome::minus, Outcome::plus) + j12.at(Outcome::plus, Outcome::plus) - p2_plus;
}

std::string MrScores::to_json() const {
  nlohmann::json j;
  j["k_lgi"] = k_lgi;
  j["k_wlgi1"] = k_wlgi1;
  j["k_wlgi2"] = k_wlgi2;
  j["k_nsit"] = k_nsit;
  return j.dump();
}

MrScores mr_scores(const QubitState& initial, const PrecessionSpec& spec,
                   const PovmParams& params) {
  return {k_lgi(initial, spec, params), k_wlgi1(initial, spec, params),
          k_wlgi2(initial, spec, params), k_nsit(initial, spec, params)};
}

}  // namespace povmreal
