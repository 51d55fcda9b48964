#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "povmreal/core.hpp"
#include "povmreal/povm.hpp"
#include "povmreal/states.hpp"

namespace povmreal {

// The four measurement directions of a CHSH run: a/a' on the biased
// unsharp side, b/b' on the projective side.
struct ChshSettings {
  RealVec3 a_hat{0, 0, 1};
  RealVec3 a_prime_hat{1, 0, 0};
  RealVec3 b_hat{0, 0, 1};
  RealVec3 b_prime_hat{1, 0, 0};

  void validate() const;  // all four unit within 1e-10
};

struct ChshResult {
  double value = 0.0;
  ChshSettings settings;
  bool analytic = false;
};

// <AB> + <AB'> + <A'B> - <A'B'> with A = lambda a.sigma + gamma I (the
// biased unsharp observable) and projective B.  Evaluated two ways --
// the correlation-matrix form lambda*[(a,Tb)+(a,Tb')+(a',Tb)-(a',Tb')]
// + 2 gamma b.s, and the trace of the assembled 4x4 Bell operator --
// and cross-checked to 1e-10.
double chsh_expectation(const TwoQubitState& state, const PovmParams& params,
                        const ChshSettings& settings);

// Closed-form maximum over all settings, 2*lambda*sqrt(M) + 2|gamma||s|,
// together with the arg-max construction (c, c' the top-2 eigenvectors
// of T^t T, a ~ Tc, a' ~ Tc', theta balancing the two branches).
ChshResult chsh_analytic_max(const TwoQubitState& state, const PovmParams& params);

// Derivative-free global search over the 8 settings angles; multi-start
// Nelder-Mead, deterministic in the seed, at most `budget` objective
// evaluations.  Independent of the closed form, never above it.
ChshResult chsh_numeric_max(const TwoQubitState& state, const PovmParams& params,
                            long budget, std::uint64_t seed = 0x5eed,
                            Exec exec = Exec::parallel);

// A(rho, lambda, gamma) = lambda*sqrt(M) + |gamma||s| and the > 1 test.
struct ChshCriterion {
  double criterion = 0.0;
  bool violated = false;
};
ChshCriterion violates_chsh(const TwoQubitState& state, const PovmParams& params);

// Property sweep: random states with M <= 1 scanned over the validity
// triangle; a criterion above 1 + 1e-10 anywhere aborts with a dump.
// case_counts follow the four-way split (gamma > 0 with lambda+gamma = 1,
// gamma > 0 interior, gamma <= 0 with lambda-gamma = 1, gamma <= 0
// interior).
struct CorollaryReport {
  long samples = 0;
  long counterexamples = 0;
  double max_criterion = 0.0;
  std::array<long, 4> case_counts{};

  std::string to_json() const;
};
CorollaryReport verify_corollary(long sample_count, std::uint64_t seed,
                                 double grid_step = 0.01, Exec exec = Exec::parallel);

}  // namespace povmreal
