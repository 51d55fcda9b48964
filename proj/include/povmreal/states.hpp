#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "povmreal/qmat.hpp"

namespace povmreal {

// Single-qubit state in Bloch form: r in [0,1], theta in [0,pi],
// phi in [0,2pi).
struct QubitState {
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;

  RealVec3 bloch() const;
  ComplexMatrix density() const;  // (1 + bloch.sigma)/2, validated PSD
};

// M(rho) and companions: eigs are the descending eigenvalues of T T^t,
// m_value their top-two sum, s_norm = |s|.
struct HorodeckiSummary {
  double m_value = 0.0;
  double s_norm = 0.0;
  std::array<double, 3> eigs{};
};

// Two-qubit state carried both as (r, s, T) and as the 4x4 density matrix
// they induce.  Construction validates hermiticity, unit trace and
// positivity (eigenvalues >= -1e-10); instances are immutable.
class TwoQubitState {
 public:
  static TwoQubitState from_hilbert_schmidt(const RealVec3& rvec, const RealVec3& svec,
                                            const RealMat3& tmat);
  static TwoQubitState from_density_matrix(const ComplexMatrix& rho);
  static TwoQubitState singlet();
  static TwoQubitState maximally_mixed();
  // Ginibre draw: G G^dagger / Tr(G G^dagger) with i.i.d. standard complex
  // Gaussian entries; deterministic in the seed.
  static TwoQubitState random(std::uint64_t seed);

  const RealVec3& rvec() const { return rvec_; }
  const RealVec3& svec() const { return svec_; }
  const RealMat3& tmat() const { return tmat_; }
  const ComplexMatrix& rho() const { return rho_; }

  // {"rvec": [...], "svec": [...], "tmat": [[...]]}, row-major T.
  std::string to_json() const;
  static TwoQubitState parse_json(const std::string& text);

 private:
  TwoQubitState(RealVec3 r, RealVec3 s, RealMat3 t, ComplexMatrix rho);

  RealVec3 rvec_, svec_;
  RealMat3 tmat_;
  ComplexMatrix rho_;
};

HorodeckiSummary horodecki(const TwoQubitState& state);

}  // namespace povmreal
