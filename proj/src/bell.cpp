#include "povmreal/bell.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <omp.h>

#include "json.hpp"
#include "povmreal/rng.hpp"

namespace povmreal {

namespace {

constexpr double kRouteTol = 1e-10;
constexpr double kOracleSlack = 1e-9;

RealVec3 unit_from_angles(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// Correlation-matrix route, cheap enough for the inner optimizer loop.
double chsh_from_correlators(const RealMat3& t, const RealVec3& s, const PovmParams& p,
                             const ChshSettings& g) {
  const RealVec3 tb = t.apply(g.b_hat);
  const RealVec3 tbp = t.apply(g.b_prime_hat);
  const double proj = g.a_hat.dot(tb) + g.a_hat.dot(tbp) + g.a_prime_hat.dot(tb) -
                      g.a_prime_hat.dot(tbp);
  return p.lambda * proj + 2.0 * p.gamma * g.b_hat.dot(s);
}

// Operator route: assemble the Bell operator with the biased observables
// A = lambda a.sigma + gamma I on Alice's side and trace against rho.
double chsh_from_operator(const TwoQubitState& state, const PovmParams& p,
                          const ChshSettings& g) {
  const ComplexMatrix a = axis_dot_sigma(g.a_hat).scaled(p.lambda) +
                          identity2().scaled(p.gamma);
  const ComplexMatrix ap = axis_dot_sigma(g.a_prime_hat).scaled(p.lambda) +
                           identity2().scaled(p.gamma);
  const ComplexMatrix bsum = axis_dot_sigma(g.b_hat + g.b_prime_hat);
  const ComplexMatrix bdiff = axis_dot_sigma(g.b_hat - g.b_prime_hat);
  const ComplexMatrix bell = tensor(a, bsum) + tensor(ap, bdiff);
  return multiply(state.rho(), bell).trace().real();
}

}  // namespace

void ChshSettings::validate() const {
  for (const RealVec3* v : {&a_hat, &a_prime_hat, &b_hat, &b_prime_hat})
    if (!v->is_unit()) throw ValidationError("CHSH settings must be unit vectors");
}

double chsh_expectation(const TwoQubitState& state, const PovmParams& params,
                        const ChshSettings& settings) {
  params.validate();
  settings.validate();
  const double r1 = chsh_from_correlators(state.tmat(), state.svec(), params, settings);
  const double r2 = chsh_from_operator(state, params, settings);
  if (std::abs(r1 - r2) > kRouteTol)
    throw InternalError("CHSH evaluation routes disagree beyond 1e-10");
  return r1;
}

ChshResult chsh_analytic_max(const TwoQubitState& state, const PovmParams& params) {
  params.validate();
  const HorodeckiSummary h = horodecki(state);
  ChshResult out;
  out.analytic = true;
  out.value = 2.0 * params.lambda * std::sqrt(std::max(h.m_value, 0.0)) +
              2.0 * std::abs(params.gamma) * h.s_norm;

  // Arg-max construction: c, c' span the top-2 eigenspace of T^t T (the
  // Gram matrix of ||Tc||), with signs making the bias terms nonnegative.
  const RealMat3 gram = state.tmat().transpose().multiply(state.tmat());
  const SymEigen3 eig = sym_eigen3_vectors(gram);
  RealVec3 c = eig.vectors[0];
  RealVec3 cp = eig.vectors[1];
  const RealVec3& s = state.svec();
  if (params.gamma * c.dot(s) < 0.0) c = c.scaled(-1.0);
  if (params.gamma * cp.dot(s) < 0.0) cp = cp.scaled(-1.0);

  const RealVec3 tc = state.tmat().apply(c);
  const RealVec3 tcp = state.tmat().apply(cp);
  const double zdeg = 1e-14;
  out.settings.a_hat = tc.norm() > zdeg ? tc.normalized() : RealVec3{0, 0, 1};
  out.settings.a_prime_hat = tcp.norm() > zdeg ? tcp.normalized() : RealVec3{0, 0, 1};

  const double xs = 2.0 * params.lambda * tc.norm() + 2.0 * params.gamma * c.dot(s);
  const double ys = 2.0 * params.lambda * tcp.norm() + 2.0 * params.gamma * cp.dot(s);
  const double theta = (xs > zdeg || ys > zdeg) ? std::atan2(ys, xs) : 0.0;
  const double ct = std::cos(theta), st = std::sin(theta);
  out.settings.b_hat = c.scaled(ct) + cp.scaled(st);
  out.settings.b_prime_hat = c.scaled(ct) - cp.scaled(st);
  return out;
}

// ---------------------------------------------------------------------------
// Numeric maximum: multi-start Nelder-Mead over the 8 settings angles.
// ---------------------------------------------------------------------------

namespace {

using Angles = std::array<double, 8>;

ChshSettings settings_from(const Angles& x) {
  ChshSettings g;
  g.a_hat = unit_from_angles(x[0], x[1]);
  g.a_prime_hat = unit_from_angles(x[2], x[3]);
  g.b_hat = unit_from_angles(x[4], x[5]);
  g.b_prime_hat = unit_from_angles(x[6], x[7]);
  return g;
}

struct NmResult {
  double best = -1e300;
  Angles x{};
};

// Standard Nelder-Mead (reflect 1, expand 2, contract 1/2, shrink 1/2) on
// the negated CHSH value; stops when the simplex collapses or the
// evaluation allowance runs out.
NmResult nelder_mead(const RealMat3& t, const RealVec3& s, const PovmParams& p,
                     const Angles& start, long max_evals) {
  constexpr int kN = 8;
  long evals = 0;
  auto f = [&](const Angles& x) {
    ++evals;
    return -chsh_from_correlators(t, s, p, settings_from(x));
  };

  std::array<Angles, kN + 1> pts;
  std::array<double, kN + 1> val;
  pts[0] = start;
  val[0] = f(start);
  for (int i = 0; i < kN; ++i) {
    pts[i + 1] = start;
    pts[i + 1][i] += 0.35;
    val[i + 1] = f(pts[i + 1]);
  }

  std::array<int, kN + 1> ord;
  for (int i = 0; i <= kN; ++i) ord[i] = i;

  while (evals < max_evals) {
    std::sort(ord.begin(), ord.end(), [&](int a, int b) { return val[a] < val[b]; });
    if (val[ord[kN]] - val[ord[0]] < 1e-13) break;

    Angles centroid{};
    for (int i = 0; i < kN; ++i)
      for (int d = 0; d < kN; ++d) centroid[d] += pts[ord[i]][d] / kN;

    const int worst = ord[kN];
    auto blend = [&](double coef) {
      Angles x;
      for (int d = 0; d < kN; ++d) x[d] = centroid[d] + coef * (pts[worst][d] - centroid[d]);
      return x;
    };

    const Angles refl = blend(-1.0);
    const double frefl = f(refl);
    if (frefl < val[ord[0]]) {
      const Angles expd = blend(-2.0);
      const double fexpd = f(expd);
      if (fexpd < frefl) {
        pts[worst] = expd;
        val[worst] = fexpd;
      } else {
        pts[worst] = refl;
        val[worst] = frefl;
      }
    } else if (frefl < val[ord[kN - 1]]) {
      pts[worst] = refl;
      val[worst] = frefl;
    } else {
      const Angles contr = blend(frefl < val[worst] ? -0.5 : 0.5);
      const double fcontr = f(contr);
      if (fcontr < std::min(frefl, val[worst])) {
        pts[worst] = contr;
        val[worst] = fcontr;
      } else {
        for (int i = 1; i <= kN; ++i) {
          const int k = ord[i];
          for (int d = 0; d < kN; ++d)
            pts[k][d] = 0.5 * (pts[k][d] + pts[ord[0]][d]);
          val[k] = f(pts[k]);
        }
      }
    }
  }

  int best = 0;
  for (int i = 1; i <= kN; ++i)
    if (val[i] < val[best]) best = i;
  return {-val[best], pts[best]};
}

}  // namespace

ChshResult chsh_numeric_max(const TwoQubitState& state, const PovmParams& params,
                            long budget, std::uint64_t seed, Exec exec) {
  params.validate();
  if (budget < 1000) throw ValidationError("optimizer budget must be >= 1000");

  const long starts = std::clamp<long>(budget / 1500, 4, 64);
  const long share = budget / starts;
  const RealMat3& t = state.tmat();
  const RealVec3& s = state.svec();
  const Rng base(seed);

  std::vector<NmResult> results(starts);
  auto run_start = [&](long k) {
    Rng rng = base.derive(static_cast<std::uint64_t>(k));
    Angles x0;
    for (int d = 0; d < 8; d += 2) {
      x0[d] = rng.uniform(0.0, M_PI);
      x0[d + 1] = rng.uniform(0.0, 2.0 * M_PI);
    }
    results[k] = nelder_mead(t, s, params, x0, share);
  };

  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < starts; ++k) run_start(k);
  } else {
    for (long k = 0; k < starts; ++k) run_start(k);
  }

  // deterministic merge: best value, lowest start index on ties
  long winner = 0;
  for (long k = 1; k < starts; ++k)
    if (results[k].best > results[winner].best) winner = k;

  ChshResult out;
  out.analytic = false;
  out.settings = settings_from(results[winner].x);
  out.value = chsh_expectation(state, params, out.settings);

  const double bound = chsh_analytic_max(state, params).value;
  if (out.value > bound + kOracleSlack)
    throw InternalError("numeric CHSH maximum exceeds the analytic bound");
  return out;
}

ChshCriterion violates_chsh(const TwoQubitState& state, const PovmParams& params) {
  params.validate();
  const HorodeckiSummary h = horodecki(state);
  ChshCriterion out;
  out.criterion = params.lambda * std::sqrt(std::max(h.m_value, 0.0)) +
                  std::abs(params.gamma) * h.s_norm;
  out.violated = out.criterion > 1.0;
  return out;
}

// ---------------------------------------------------------------------------
// Corollary sweep
// ---------------------------------------------------------------------------

namespace {

struct SampleScan {
  double max_criterion = 0.0;
  std::array<long, 4> case_counts{};
  bool counterexample = false;
  double bad_lambda = 0.0, bad_gamma = 0.0, bad_criterion = 0.0;
};

// Scan the validity triangle (grid plus the |lambda|+|gamma| = 1 edge)
// for one state with sqrt(M) and |s| precomputed.
SampleScan scan_triangle(double sqrt_m, double s_norm, double step) {
  SampleScan out;
  const long nl = std::lround(1.0 / step);
  const long ng = std::lround(2.0 / step);

  auto visit = [&](double lam, double gam) {
    const double a = lam * sqrt_m + std::abs(gam) * s_norm;
    if (a > out.max_criterion) out.max_criterion = a;
    const bool edge = std::abs(lam + std::abs(gam) - 1.0) <= 1e-12;
    if (gam > 0.0)
      ++out.case_counts[edge ? 0 : 1];
    else
      ++out.case_counts[edge ? 2 : 3];
    if (a > 1.0 + 1e-10 && !out.counterexample) {
      out.counterexample = true;
      out.bad_lambda = lam;
      out.bad_gamma = gam;
      out.bad_criterion = a;
    }
  };

  for (long j = 0; j <= ng; ++j) {
    const double gam = -1.0 + static_cast<double>(j) * step;
    for (long i = 0; i <= nl; ++i) {
      const double lam = static_cast<double>(i) * step;
      if (lam + std::abs(gam) <= 1.0 + 1e-12) visit(lam, gam);
    }
    visit(1.0 - std::abs(gam), gam);  // the validity edge itself
  }
  return out;
}

}  // namespace

std::string CorollaryReport::to_json() const {
  nlohmann::json j;
  j["samples"] = samples;
  j["counterexamples"] = counterexamples;
  j["max_criterion"] = max_criterion;
  j["case_counts"] = case_counts;
  return j.dump();
}

CorollaryReport verify_corollary(long sample_count, std::uint64_t seed, double grid_step,
                                 Exec exec) {
  if (sample_count < 0) throw ValidationError("sample count must be >= 0");
  if (!(grid_step > 0.0 && grid_step <= 0.1))
    throw ValidationError("grid step must lie in (0, 0.1]");

  CorollaryReport report;
  report.samples = sample_count;
  if (sample_count == 0) return report;

  const Rng base(seed);
  std::vector<SampleScan> scans(sample_count);
  std::vector<char> kept(sample_count, 0);

  auto run_sample = [&](long k) {
    const TwoQubitState state = TwoQubitState::random(base.derive(k).seed());
    const HorodeckiSummary h = horodecki(state);
    if (h.m_value > 1.0) return;  // violates projectively; out of scope
    kept[k] = 1;
    scans[k] = scan_triangle(std::sqrt(std::max(h.m_value, 0.0)), h.s_norm, grid_step);
    if (scans[k].counterexample) {
      std::ostringstream msg;
      msg << "corollary counterexample: criterion " << scans[k].bad_criterion
          << " at lambda=" << scans[k].bad_lambda << " gamma=" << scans[k].bad_gamma
          << " for state " << state.to_json();
      throw InternalError(msg.str());
    }
  };

  if (exec == Exec::parallel) {
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 16)
    for (long k = 0; k < sample_count; ++k) {
      try {
        run_sample(k);
      } catch (...) {
#pragma omp critical
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
  } else {
    for (long k = 0; k < sample_count; ++k) run_sample(k);
  }

  for (long k = 0; k < sample_count; ++k) {
    if (!kept[k]) continue;
    report.max_criterion = std::max(report.max_criterion, scans[k].max_criterion);
    for (int c = 0; c < 4; ++c) report.case_counts[c] += scans[k].case_counts[c];
    if (scans[k].counterexample) ++report.counterexamples;
  }
  return report;
}

}  // namespace povmreal
