#pragma once

#include <string>

#include "povmreal/povm.hpp"
#include "povmreal/states.hpp"

namespace povmreal {

// Equidistant-time precession setup: the state advances by
// U = exp(-i * omega_dt * sigma_x) per step (Bloch rotation 2*omega_dt
// about x), and every measurement is the sigma_z POVM.
struct PrecessionSpec {
  double omega_dt = 0.0;

  void validate() const;  // omega_dt in [0, 2*pi)
  ComplexMatrix step_unitary() const;
};

// Joint outcome distribution of measurements at two of the three times.
struct JointDistribution {
  // probs[first][second], index 0 = plus, 1 = minus
  double probs[2][2] = {{0.0, 0.0}, {0.0, 0.0}};

  double at(Outcome first, Outcome second) const {
    return probs[first == Outcome::plus ? 0 : 1][second == Outcome::plus ? 0 : 1];
  }
  double sum() const { return probs[0][0] + probs[0][1] + probs[1][0] + probs[1][1]; }
};

// Measure at t_i (Luders update), evolve freely to t_j, measure again.
// The initial state is the state at t_1; i < j, both in {1,2,3}.
JointDistribution sequential_joint(const QubitState& initial, const PrecessionSpec& spec,
                                   const PovmParams& params, int i, int j);

// <Q(t_i) Q(t_j)> from a joint distribution.
double correlator(const JointDistribution& joint);

// C12 + C23 - C13 (macrorealist bound 1).
double k_lgi(const QubitState& initial, const PrecessionSpec& spec, const PovmParams& params);

// p(Q2=+,Q3=+) - p(Q1=-,Q2=+) - p(Q1=+,Q3=+) (macrorealist bound 0).
double k_wlgi1(const QubitState& initial, const PrecessionSpec& spec, const PovmParams& params);

// Outcome-flipped partner: p(Q2=-,Q3=-) - p(Q1=+,Q2=-) - p(Q1=-,Q3=-).
double k_wlgi2(const QubitState& initial, const PrecessionSpec& spec, const PovmParams& params);

// p(Q1=-,Q2=+) + p(Q1=+,Q2=+) - p(Q2=+), with the lone p(Q2=+) computed
// without any interaction at t_1 (macrorealist value 0).
double k_nsit(const QubitState& initial, const PrecessionSpec& spec, const PovmParams& params);

struct MrScores {
  double k_lgi = 0.0;
  double k_wlgi1 = 0.0;
  double k_wlgi2 = 0.0;
  double k_nsit = 0.0;

  std::string to_json() const;
};
MrScores mr_scores(const QubitState& initial, const PrecessionSpec& spec,
                   const PovmParams& params);

}  // namespace povmreal
