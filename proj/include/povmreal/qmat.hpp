#pragma once

#include <array>
#include <complex>
#include <vector>

#include "povmreal/core.hpp"

namespace povmreal {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Real 3-vectors and 3x3 matrices (Bloch vectors, correlation matrices).
// ---------------------------------------------------------------------------

struct RealVec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  double dot(const RealVec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const;
  RealVec3 scaled(double s) const { return {s * x, s * y, s * z}; }
  RealVec3 operator+(const RealVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  RealVec3 operator-(const RealVec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  RealVec3 cross(const RealVec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  // Unit vector in the same direction; throws on (numerically) zero input.
  RealVec3 normalized() const;
  bool is_unit(double tol = 1e-10) const;
};

class RealMat3 {
 public:
  RealMat3() : m_{} {}
  static RealMat3 identity();
  static RealMat3 diag(double a, double b, double c);

  double& operator()(int i, int j) { return m_[3 * i + j]; }
  double operator()(int i, int j) const { return m_[3 * i + j]; }

  RealVec3 apply(const RealVec3& v) const;
  RealMat3 transpose() const;
  RealMat3 multiply(const RealMat3& o) const;
  bool is_symmetric(double tol = 1e-12) const;

 private:
  std::array<double, 9> m_;  // row-major
};

// Eigenvalues of a symmetric 3x3 matrix, descending.  Closed-form
// trigonometric solve; falls back to Jacobi when the normalized cubic
// discriminant signals near-multiple roots (< 1e-14).
std::array<double, 3> sym_eigen3(const RealMat3& v);

// Same, with orthonormal eigenvectors (columns[i] pairs with values[i]).
// Always Jacobi, with a deterministic sign convention, so degenerate
// spectra yield reproducible bases.
struct SymEigen3 {
  std::array<double, 3> values;
  std::array<RealVec3, 3> vectors;
};
SymEigen3 sym_eigen3_vectors(const RealMat3& v);

// ---------------------------------------------------------------------------
// Dense complex matrices of dimension 2 or 4.
// ---------------------------------------------------------------------------

class ComplexMatrix {
 public:
  explicit ComplexMatrix(int dim);
  static ComplexMatrix identity(int dim);

  int dim() const { return dim_; }
  cplx& operator()(int i, int j) { return m_[dim_ * i + j]; }
  cplx operator()(int i, int j) const { return m_[dim_ * i + j]; }

  ComplexMatrix operator+(const ComplexMatrix& o) const;
  ComplexMatrix operator-(const ComplexMatrix& o) const;
  ComplexMatrix scaled(cplx s) const;
  ComplexMatrix adjoint() const;
  cplx trace() const;
  double max_abs() const;
  double max_abs_diff(const ComplexMatrix& o) const;
  bool is_hermitian(double tol = 1e-12) const;

 private:
  int dim_;
  std::array<cplx, 16> m_;  // row-major, first dim*dim entries used
};

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);

// Kronecker product of two 2x2 matrices, block(i,j) = a(i,j) * b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// Pauli matrices and identities.
const ComplexMatrix& sigma_x();
const ComplexMatrix& sigma_y();
const ComplexMatrix& sigma_z();
const ComplexMatrix& identity2();
const ComplexMatrix& identity4();
const ComplexMatrix& pauli(int i);  // 1 -> x, 2 -> y, 3 -> z

// n.sigma for a direction n (need not be unit).
ComplexMatrix axis_dot_sigma(const RealVec3& n);

// exp(-i * angle/2 * n.sigma): rotates Bloch vectors by `angle` about n.
ComplexMatrix rotation(const RealVec3& axis, double angle);

// U m U^dagger.
ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& m);

// Hermitian eigendecomposition.  Eigenvalues descending, eigenvectors
// orthonormal (vectors(i, k) is component i of the k-th eigenvector).
// 2x2 in closed form, 4x4 by cyclic complex Jacobi (tolerance 1e-12 on
// off-diagonal mass, at most 200 sweeps).  Throws on non-Hermitian input.
struct HermitianEigen {
  std::vector<double> values;
  ComplexMatrix vectors;
};
HermitianEigen hermitian_eigen(const ComplexMatrix& m);

// PSD square root via the eigendecomposition.  Eigenvalues in
// [-1e-10, 0) are clamped to zero; anything below -1e-10 throws.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

}  // namespace povmreal
