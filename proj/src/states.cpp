#include "povmreal/states.hpp"

#include <cmath>

#include "json.hpp"
#include "povmreal/rng.hpp"

namespace povmreal {

namespace {

constexpr double kPsdTol = -1e-10;
constexpr double kHermTol = 1e-10;

void validate_density(const ComplexMatrix& rho, const char* what) {
  if (!rho.is_hermitian(kHermTol))
    throw ValidationError(std::string(what) + ": density matrix must be Hermitian");
  if (std::abs(rho.trace() - cplx(1.0)) > kHermTol)
    throw ValidationError(std::string(what) + ": density matrix must have unit trace");
  const HermitianEigen eig = hermitian_eigen(rho);
  for (double v : eig.values)
    if (v < kPsdTol)
      throw ValidationError(std::string(what) + ": density matrix has a negative eigenvalue");
}

}  // namespace

RealVec3 QubitState::bloch() const {
  return {r * std::sin(theta) * std::cos(phi), r * std::sin(theta) * std::sin(phi),
          r * std::cos(theta)};
}

ComplexMatrix QubitState::density() const {
  if (r < 0.0 || r > 1.0 + 1e-12) throw ValidationError("Bloch radius must lie in [0, 1]");
  const RealVec3 v = bloch();
  ComplexMatrix rho = (identity2() + axis_dot_sigma(v)).scaled(0.5);
  validate_density(rho, "QubitState");
  return rho;
}

TwoQubitState::TwoQubitState(RealVec3 r, RealVec3 s, RealMat3 t, ComplexMatrix rho)
    : rvec_(r), svec_(s), tmat_(t), rho_(rho) {}

TwoQubitState TwoQubitState::from_hilbert_schmidt(const RealVec3& rvec, const RealVec3& svec,
                                                  const RealMat3& tmat) {
  ComplexMatrix rho = tensor(identity2(), identity2());
  const std::array<double, 3> r = {rvec.x, rvec.y, rvec.z};
  const std::array<double, 3> s = {svec.x, svec.y, svec.z};
  for (int i = 1; i <= 3; ++i) {
    rho = rho + tensor(pauli(i), identity2()).scaled(r[i - 1]);
    rho = rho + tensor(identity2(), pauli(i)).scaled(s[i - 1]);
    for (int j = 1; j <= 3; ++j)
      rho = rho + tensor(pauli(i), pauli(j)).scaled(tmat(i - 1, j - 1));
  }
  rho = rho.scaled(0.25);
  validate_density(rho, "from_hilbert_schmidt");
  return TwoQubitState(rvec, svec, tmat, rho);
}

TwoQubitState TwoQubitState::from_density_matrix(const ComplexMatrix& rho) {
  if (rho.dim() != 4) throw ValidationError("two-qubit density matrix must be 4x4");
  validate_density(rho, "from_density_matrix");
  RealVec3 rvec, svec;
  RealMat3 tmat;
  std::array<double*, 3> rp = {&rvec.x, &rvec.y, &rvec.z};
  std::array<double*, 3> sp = {&svec.x, &svec.y, &svec.z};
  for (int i = 1; i <= 3; ++i) {
    *rp[i - 1] = multiply(rho, tensor(pauli(i), identity2())).trace().real();
    *sp[i - 1] = multiply(rho, tensor(identity2(), pauli(i))).trace().real();
    for (int j = 1; j <= 3; ++j)
      tmat(i - 1, j - 1) = multiply(rho, tensor(pauli(i), pauli(j))).trace().real();
  }
  return TwoQubitState(rvec, svec, tmat, rho);
}

TwoQubitState TwoQubitState::singlet() {
  return from_hilbert_schmidt({}, {}, RealMat3::diag(-1.0, -1.0, -1.0));
}

TwoQubitState TwoQubitState::maximally_mixed() {
  return from_hilbert_schmidt({}, {}, RealMat3());
}

TwoQubitState TwoQubitState::random(std::uint64_t seed) {
  Rng rng(seed);
  ComplexMatrix g(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = cplx(rng.gaussian(), rng.gaussian());
  ComplexMatrix rho = multiply(g, g.adjoint());
  rho = rho.scaled(1.0 / rho.trace().real());
  // enforce exact hermiticity against rounding in the product
  ComplexMatrix sym = (rho + rho.adjoint()).scaled(0.5);
  return from_density_matrix(sym);
}

HorodeckiSummary horodecki(const TwoQubitState& state) {
  const RealMat3 v = state.tmat().multiply(state.tmat().transpose());
  HorodeckiSummary out;
  out.eigs = sym_eigen3(v);
  out.m_value = out.eigs[0] + out.eigs[1];
  out.s_norm = state.svec().norm();
  return out;
}

std::string TwoQubitState::to_json() const {
  nlohmann::json j;
  j["rvec"] = {rvec_.x, rvec_.y, rvec_.z};
  j["svec"] = {svec_.x, svec_.y, svec_.z};
  j["tmat"] = {{tmat_(0, 0), tmat_(0, 1), tmat_(0, 2)},
               {tmat_(1, 0), tmat_(1, 1), tmat_(1, 2)},
               {tmat_(2, 0), tmat_(2, 1), tmat_(2, 2)}};
  return j.dump();
}

TwoQubitState TwoQubitState::parse_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("invalid state JSON: ") + e.what());
  }
  auto vec = [&](const char* key) -> RealVec3 {
    if (!j.contains(key) || !j[key].is_array() || j[key].size() != 3)
      throw ValidationError(std::string("state JSON field '") + key + "' must be a 3-array");
    return {j[key][0].get<double>(), j[key][1].get<double>(), j[key][2].get<double>()};
  };
  const RealVec3 r = vec("rvec"), s = vec("svec");
  if (!j.contains("tmat") || !j["tmat"].is_array() || j["tmat"].size() != 3)
    throw ValidationError("state JSON field 'tmat' must be a 3x3 array");
  RealMat3 t;
  for (int i = 0; i < 3; ++i) {
    if (!j["tmat"][i].is_array() || j["tmat"][i].size() != 3)
      throw ValidationError("state JSON field 'tmat' must be a 3x3 array");
    for (int k = 0; k < 3; ++k) t(i, k) = j["tmat"][i][k].get<double>();
  }
  return from_hilbert_schmidt(r, s, t);
}

}  // namespace povmreal
