#include "povmreal/qmat.hpp"

#include <algorithm>
#include <cmath>

namespace povmreal {

namespace {

constexpr double kJacobiTol = 1e-13;
constexpr int kMaxSweeps = 200;
constexpr double kPsdClamp = -1e-10;

void check_dim(int dim) {
  if (dim != 2 && dim != 4) throw ValidationError("matrix dimension must be 2 or 4");
}

}  // namespace

// ---------------------------------------------------------------------------
// RealVec3 / RealMat3
// ---------------------------------------------------------------------------

double RealVec3::norm() const { return std::sqrt(dot(*this)); }

RealVec3 RealVec3::normalized() const {
  const double n = norm();
  if (n < 1e-300) throw ValidationError("cannot normalize a zero vector");
  return scaled(1.0 / n);
}

bool RealVec3::is_unit(double tol) const { return std::abs(norm() - 1.0) <= tol; }

RealMat3 RealMat3::identity() { return diag(1.0, 1.0, 1.0); }

RealMat3 RealMat3::diag(double a, double b, double c) {
  RealMat3 m;
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

RealVec3 RealMat3::apply(const RealVec3& v) const {
  return {m_[0] * v.x + m_[1] * v.y + m_[2] * v.z,
          m_[3] * v.x + m_[4] * v.y + m_[5] * v.z,
          m_[6] * v.x + m_[7] * v.y + m_[8] * v.z};
}

RealMat3 RealMat3::transpose() const {
  RealMat3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
  return t;
}

RealMat3 RealMat3::multiply(const RealMat3& o) const {
  RealMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k) acc += (*this)(i, k) * o(k, j);
      r(i, j) = acc;
    }
  return r;
}

bool RealMat3::is_symmetric(double tol) const {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
  return true;
}

// ---------------------------------------------------------------------------
// 3x3 symmetric eigenvalues
// ---------------------------------------------------------------------------

namespace {

// Cyclic Jacobi on a real symmetric 3x3; returns eigenvalues and an
// orthogonal matrix of column eigenvectors.
SymEigen3 jacobi3(const RealMat3& v) {
  double a[3][3];
  double q[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = 0.5 * (v(i, j) + v(j, i));

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) off += a[i][j] * a[i][j];
    if (off <= kJacobiTol * kJacobiTol) break;

    for (int p = 0; p < 3; ++p)
      for (int qq = p + 1; qq < 3; ++qq) {
        const double apq = a[p][qq];
        if (std::abs(apq) < 1e-300) continue;
        const double eta = (a[p][p] - a[qq][qq]) / (2.0 * apq);
        const double t = (eta >= 0.0 ? 1.0 : -1.0) / (std::abs(eta) + std::sqrt(eta * eta + 1.0));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < 3; ++k) {
          const double akp = a[k][p], akq = a[k][qq];
          a[k][p] = c * akp + s * akq;
          a[k][qq] = -s * akp + c * akq;
        }
        for (int k = 0; k < 3; ++k) {
          const double apk = a[p][k], aqk = a[qq][k];
          a[p][k] = c * apk + s * aqk;
          a[qq][k] = -s * apk + c * aqk;
        }
        for (int k = 0; k < 3; ++k) {
          const double qkp = q[k][p], qkq = q[k][qq];
          q[k][p] = c * qkp + s * qkq;
          q[k][qq] = -s * qkp + c * qkq;
        }
      }
  }

  SymEigen3 out;
  std::array<int, 3> order = {0, 1, 2};
  const std::array<double, 3> ev = {a[0][0], a[1][1], a[2][2]};
  std::stable_sort(order.begin(), order.end(), [&](int l, int r) { return ev[l] > ev[r]; });
  for (int k = 0; k < 3; ++k) {
    const int c = order[k];
    out.values[k] = ev[c];
    RealVec3 vec = {q[0][c], q[1][c], q[2][c]};
    // deterministic sign: largest-magnitude component made positive
    const double ax = std::abs(vec.x), ay = std::abs(vec.y), az = std::abs(vec.z);
    double lead = vec.x;
    if (ay > ax && ay >= az) lead = vec.y;
    else if (az > ax && az > ay) lead = vec.z;
    if (lead < 0.0) vec = vec.scaled(-1.0);
    out.vectors[k] = vec;
  }
  return out;
}

}  // namespace

std::array<double, 3> sym_eigen3(const RealMat3& v) {
  if (!v.is_symmetric()) throw ValidationError("sym_eigen3 requires a symmetric matrix");

  const double q = (v(0, 0) + v(1, 1) + v(2, 2)) / 3.0;
  const double p1 = v(0, 1) * v(0, 1) + v(0, 2) * v(0, 2) + v(1, 2) * v(1, 2);
  const double p2 = (v(0, 0) - q) * (v(0, 0) - q) + (v(1, 1) - q) * (v(1, 1) - q) +
                    (v(2, 2) - q) * (v(2, 2) - q) + 2.0 * p1;
  if (p2 <= 1e-28) return {q, q, q};  // scalar matrix

  const double p = std::sqrt(p2 / 6.0);
  // B = (V - q I) / p, r = det(B) / 2
  auto b = [&](int i, int j) { return ((i == j ? v(i, j) - q : v(i, j))) / p; };
  const double detb = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                      b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                      b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
  const double r = std::clamp(detb / 2.0, -1.0, 1.0);

  // 1 - r^2 vanishes exactly when the normalized cubic has a repeated
  // root; hand those to Jacobi.
  if (1.0 - r * r < 1e-14) return jacobi3(v).values;

  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
  const double e2 = 3.0 * q - e1 - e3;
  return {e1, e2, e3};
}

SymEigen3 sym_eigen3_vectors(const RealMat3& v) {
  if (!v.is_symmetric()) throw ValidationError("sym_eigen3 requires a symmetric matrix");
  return jacobi3(v);
}

// ---------------------------------------------------------------------------
// ComplexMatrix
// ---------------------------------------------------------------------------

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim), m_{} { check_dim(dim); }

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
  if (dim_ != o.dim_) throw ValidationError("matrix dimension mismatch");
  ComplexMatrix r(dim_);
  for (int k = 0; k < dim_ * dim_; ++k) r.m_[k] = m_[k] + o.m_[k];
  return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
  if (dim_ != o.dim_) throw ValidationError("matrix dimension mismatch");
  ComplexMatrix r(dim_);
  for (int k = 0; k < dim_ * dim_; ++k) r.m_[k] = m_[k] - o.m_[k];
  return r;
}

ComplexMatrix ComplexMatrix::scaled(cplx s) const {
  ComplexMatrix r(dim_);
  for (int k = 0; k < dim_ * dim_; ++k) r.m_[k] = s * m_[k];
  return r;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r(i, j) = std::conj((*this)(j, i));
  return r;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (int k = 0; k < dim_ * dim_; ++k) m = std::max(m, std::abs(m_[k]));
  return m;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& o) const {
  if (dim_ != o.dim_) throw ValidationError("matrix dimension mismatch");
  double m = 0.0;
  for (int k = 0; k < dim_ * dim_; ++k) m = std::max(m, std::abs(m_[k] - o.m_[k]));
  return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw ValidationError("matrix dimension mismatch");
  const int n = a.dim();
  ComplexMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k) acc += a(i, k) * b(k, j);
      r(i, j) = acc;
    }
  return r;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != 2 || b.dim() != 2) throw ValidationError("tensor product requires two 2x2 matrices");
  ComplexMatrix r(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return r;
}

const ComplexMatrix& sigma_x() {
  static const ComplexMatrix m = [] {
    ComplexMatrix s(2);
    s(0, 1) = 1.0;
    s(1, 0) = 1.0;
    return s;
  }();
  return m;
}

const ComplexMatrix& sigma_y() {
  static const ComplexMatrix m = [] {
    ComplexMatrix s(2);
    s(0, 1) = cplx(0.0, -1.0);
    s(1, 0) = cplx(0.0, 1.0);
    return s;
  }();
  return m;
}

const ComplexMatrix& sigma_z() {
  static const ComplexMatrix m = [] {
    ComplexMatrix s(2);
    s(0, 0) = 1.0;
    s(1, 1) = -1.0;
    return s;
  }();
  return m;
}

const ComplexMatrix& identity2() {
  static const ComplexMatrix m = ComplexMatrix::identity(2);
  return m;
}

const ComplexMatrix& identity4() {
  static const ComplexMatrix m = ComplexMatrix::identity(4);
  return m;
}

// Pauli index convention used everywhere: 1 -> x, 2 -> y, 3 -> z.
const ComplexMatrix& pauli(int i) {
  switch (i) {
    case 1: return sigma_x();
    case 2: return sigma_y();
    case 3: return sigma_z();
    default: throw ValidationError("pauli index must be 1, 2 or 3");
  }
}

ComplexMatrix axis_dot_sigma(const RealVec3& n) {
  ComplexMatrix m(2);
  m(0, 0) = n.z;
  m(0, 1) = cplx(n.x, -n.y);
  m(1, 0) = cplx(n.x, n.y);
  m(1, 1) = -n.z;
  return m;
}

ComplexMatrix rotation(const RealVec3& axis, double angle) {
  const RealVec3 n = axis.normalized();
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  return identity2().scaled(c) + axis_dot_sigma(n).scaled(cplx(0.0, -s));
}

ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& m) {
  return multiply(multiply(u, m), u.adjoint());
}

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition
// ---------------------------------------------------------------------------

namespace {

HermitianEigen eigen2(const ComplexMatrix& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const cplx b = m(0, 1);
  const double mean = 0.5 * (a + d);
  const double delta = 0.5 * (a - d);
  const double rad = std::sqrt(delta * delta + std::norm(b));

  HermitianEigen out{{mean + rad, mean - rad}, ComplexMatrix(2)};

  if (std::abs(b) < 1e-300 && rad < 1e-300) {
    out.vectors = ComplexMatrix::identity(2);
    return out;
  }

  // (b, l1 - a) and (l1 - d, conj(b)) both solve (M - l1)v = 0; take the
  // better-conditioned one.
  const double l1 = out.values[0];
  cplx v0, v1;
  if (std::abs(l1 - a) >= std::abs(l1 - d)) {
    v0 = b;
    v1 = l1 - a;
  } else {
    v0 = l1 - d;
    v1 = std::conj(b);
  }
  const double n = std::sqrt(std::norm(v0) + std::norm(v1));
  v0 /= n;
  v1 /= n;
  out.vectors(0, 0) = v0;
  out.vectors(1, 0) = v1;
  out.vectors(0, 1) = -std::conj(v1);
  out.vectors(1, 1) = std::conj(v0);
  return out;
}

HermitianEigen eigen_jacobi(const ComplexMatrix& m) {
  const int n = m.dim();
  ComplexMatrix a(n), v = ComplexMatrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += std::norm(a(i, j));
    if (off <= kJacobiTol * kJacobiTol) break;

    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r < 1e-300) continue;
        const cplx phase = a(p, q) / r;
        const double eta = (a(p, p).real() - a(q, q).real()) / (2.0 * r);
        const double t = (eta >= 0.0 ? 1.0 : -1.0) / (std::abs(eta) + std::sqrt(eta * eta + 1.0));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // columns: A <- A U with U[p][p]=c, U[p][q]=-s*phase,
        // U[q][p]=s*conj(phase), U[q][q]=c
        for (int k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp + s * std::conj(phase) * akq;
          a(k, q) = -s * phase * akp + c * akq;
        }
        // rows: A <- U^dagger A
        for (int k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + s * phase * aqk;
          a(q, k) = -s * std::conj(phase) * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp + s * std::conj(phase) * vkq;
          v(k, q) = -s * phase * vkp + c * vkq;
        }
      }
  }

  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n)};
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int l, int r) { return a(l, l).real() > a(r, r).real(); });
  for (int k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

}  // namespace

HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
  if (!m.is_hermitian()) throw ValidationError("hermitian_eigen requires a Hermitian matrix");
  return m.dim() == 2 ? eigen2(m) : eigen_jacobi(m);
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  const HermitianEigen eig = hermitian_eigen(m);
  const int n = m.dim();
  ComplexMatrix s(n);
  for (int k = 0; k < n; ++k) {
    double v = eig.values[k];
    if (v < kPsdClamp) throw ValidationError("psd_sqrt requires a positive semidefinite matrix");
    v = std::max(v, 0.0);
    const double root = std::sqrt(v);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        s(i, j) += root * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
  }
  return s;
}

}  // namespace povmreal
