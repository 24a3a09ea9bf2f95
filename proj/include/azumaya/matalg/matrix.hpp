#pragma once

#include "azumaya/config.hpp"

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <string>

namespace azumaya::matalg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

/// Kronecker product, (a⊗b)[i·rows_b + p, j·cols_b + q] = a[i,j]·b[p,q].
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Matrix unit e_{ij} of size n.
inline ComplexMatrix matrix_unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  ComplexMatrix e = ComplexMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

inline double frobenius(const ComplexMatrix& a) { return a.norm(); }

inline double operator_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  return Eigen::JacobiSVD<ComplexMatrix>(a).singularValues()(0);
}

inline bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                         const ToleranceConfig& cfg) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         (a - b).cwiseAbs().maxCoeff() <= cfg.abs_tol;
}

inline double unitarity_residual(const ComplexMatrix& u) {
  return frobenius(u * u.adjoint() - identity(u.rows()));
}

/// A square matrix known to satisfy U·U* = I within tolerance.
class UnitaryMatrix {
public:
  UnitaryMatrix() = default;

  /// Throws InputError when `m` is not square or not unitary within
  /// `cfg.abs_tol`.
  UnitaryMatrix(ComplexMatrix m, const ToleranceConfig& cfg = {}) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0)
      throw InputError("UnitaryMatrix: matrix must be square and non-empty");
    double r = unitarity_residual(m_);
    if (!(r <= cfg.abs_tol))
      throw InputError("UnitaryMatrix: not unitary, residual " + std::to_string(r));
  }

  static UnitaryMatrix identity(Eigen::Index n) {
    UnitaryMatrix u;
    u.m_ = ComplexMatrix::Identity(n, n);
    return u;
  }

  /// Skips the unitarity check; for results of constructions that are
  /// unitary by design (polar factors, products of unitaries).
  static UnitaryMatrix trusted(ComplexMatrix m) {
    UnitaryMatrix u;
    u.m_ = std::move(m);
    return u;
  }

  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index size() const { return m_.rows(); }
  UnitaryMatrix adjoint() const { return trusted(m_.adjoint()); }
  Complex determinant() const { return m_.determinant(); }

  friend UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    return trusted(a.m_ * b.m_);
  }

private:
  ComplexMatrix m_;
};

inline ComplexMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      double re = normal(rng);
      double im = normal(rng);
      g(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  return g;
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the
/// phases of R's diagonal pushed into Q.
inline UnitaryMatrix haar_unitary(Eigen::Index n, Rng& rng) {
  ComplexMatrix g = random_gaussian(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    Complex d = r(i, i);
    double a = std::abs(d);
    q.col(i) *= (a > 0.0 ? d / a : Complex(1.0));
  }
  return UnitaryMatrix::trusted(std::move(q));
}

inline UnitaryMatrix haar_unitary(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  return haar_unitary(n, rng);
}

inline ComplexMatrix random_hermitian(Eigen::Index n, Rng& rng) {
  ComplexMatrix g = random_gaussian(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

/// Unitary polar factor of a square matrix: S = U·|S|.
inline UnitaryMatrix polar_unitary(const ComplexMatrix& s) {
  Eigen::JacobiSVD<ComplexMatrix> svd(s, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return UnitaryMatrix::trusted(svd.matrixU() * svd.matrixV().adjoint());
}

/// exp(iH) for Hermitian H.
inline UnitaryMatrix exp_i_hermitian(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  ComplexVector phases = (Complex(0.0, 1.0) * es.eigenvalues().cast<Complex>()).array().exp();
  return UnitaryMatrix::trusted(es.eigenvectors() * phases.asDiagonal() *
                                es.eigenvectors().adjoint());
}

/// Hermitian H with u = exp(iH) and spectrum of H in (-π, π].
/// Uses the complex Schur form, which is diagonal for normal matrices.
inline ComplexMatrix unitary_log(const UnitaryMatrix& u) {
  Eigen::ComplexSchur<ComplexMatrix> schur(u.matrix());
  const ComplexMatrix& t = schur.matrixT();
  ComplexVector angles(t.rows());
  for (Eigen::Index i = 0; i < t.rows(); ++i) angles(i) = std::arg(t(i, i));
  const ComplexMatrix& q = schur.matrixU();
  ComplexMatrix h = q * angles.asDiagonal() * q.adjoint();
  return 0.5 * (h + h.adjoint());
}

/// Rescales u into SU(k) using the principal branch of det(u)^{-1/k}.
/// The remaining μ_k ambiguity is left to the caller.
inline UnitaryMatrix su_normalize(const UnitaryMatrix& u) {
  const double k = static_cast<double>(u.size());
  Complex det = u.determinant();
  Complex scale = std::exp(-std::log(det) / k);
  return UnitaryMatrix::trusted(scale * u.matrix());
}

struct ProjectiveComparison {
  bool equal = false;
  double phase = 0.0;    ///< θ minimising ‖u − e^{iθ}v‖_F
  double residual = 0.0; ///< ‖u − e^{iθ}v‖_F at that θ
};

/// Compares u and v in PU(k): equal iff min_θ ‖u − e^{iθ}v‖_F ≤ abs_tol.
inline ProjectiveComparison projective_compare(const ComplexMatrix& u, const ComplexMatrix& v,
                                               const ToleranceConfig& cfg) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw InputError("projective_compare: size mismatch");
  ProjectiveComparison out;
  Complex tr = (v.adjoint() * u).trace();
  out.phase = std::abs(tr) > 0.0 ? std::arg(tr) : 0.0;
  out.residual = frobenius(u - std::polar(1.0, out.phase) * v);
  out.equal = std::abs(tr) > cfg.abs_tol && out.residual <= cfg.abs_tol;
  return out;
}

inline ProjectiveComparison projective_equal(const UnitaryMatrix& u, const UnitaryMatrix& v,
                                             const ToleranceConfig& cfg) {
  return projective_compare(u.matrix(), v.matrix(), cfg);
}

/// Operator-norm distance in PU(k) with the phase fixed by the trace.
inline double projective_distance(const ComplexMatrix& u, const ComplexMatrix& v) {
  Complex tr = (v.adjoint() * u).trace();
  double phase = std::abs(tr) > 0.0 ? std::arg(tr) : 0.0;
  return operator_norm(u - std::polar(1.0, phase) * v);
}

} // namespace azumaya::matalg
