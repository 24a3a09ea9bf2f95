#pragma once

#include "azumaya/matalg/star_hom.hpp"

#include <optional>

namespace azumaya::matalg {

/// Dimension of {S : ψ(e_ij)·S = S·φ(e_ij) for all i,j}.
///
/// The system is assembled in vec form, (I⊗ψ_ij − φ_ijᵀ⊗I)·vec(S) = 0, and
/// its rank is read off the Gram matrix: an eigenvalue counts as nonzero
/// when it exceeds abs_tol (singular value above sqrt(abs_tol)).
inline int intertwiner_space_dimension(const StarHom& phi, const StarHom& psi,
                                       const ToleranceConfig& cfg) {
  if (phi.k() != psi.k() || phi.n() != psi.n())
    throw InputError("intertwiner_space_dimension: shape mismatch");
  const int n = phi.n();
  const ComplexMatrix id = identity(n);
  ComplexMatrix gram = ComplexMatrix::Zero(n * n, n * n);
  for (std::size_t u = 0; u < phi.units().size(); ++u) {
    ComplexMatrix block = kron(id, psi.units()[u]) - kron(phi.units()[u].transpose(), id);
    gram += block.adjoint() * block;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram, Eigen::EigenvaluesOnly);
  int nullity = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) <= cfg.abs_tol) ++nullity;
  return nullity;
}

/// Orthonormal basis of range(P) by modified Gram–Schmidt over P's
/// columns, pivoting on the largest remaining column norm (first index on
/// ties). Stops when the remaining norm drops to `cutoff`.
inline ComplexMatrix range_basis(const ComplexMatrix& p, double cutoff) {
  ComplexMatrix work = p;
  std::vector<ComplexVector> basis;
  const Eigen::Index cols = p.cols();
  std::vector<bool> used(static_cast<std::size_t>(cols), false);
  while (static_cast<Eigen::Index>(basis.size()) < cols) {
    Eigen::Index best = -1;
    double best_norm = cutoff;
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (used[static_cast<std::size_t>(c)]) continue;
      double nrm = work.col(c).norm();
      if (nrm > best_norm + 1e-12) {
        best_norm = nrm;
        best = c;
      }
    }
    if (best < 0) break;
    used[static_cast<std::size_t>(best)] = true;
    ComplexVector v = work.col(best);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) v -= b * b.dot(v);
    v.normalize();
    basis.push_back(v);
    for (Eigen::Index c = 0; c < cols; ++c)
      if (!used[static_cast<std::size_t>(c)]) work.col(c) -= v * v.dot(work.col(c));
  }
  ComplexMatrix out(p.rows(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = basis[i];
  return out;
}

struct HomDecomposition {
  UnitaryMatrix isometry; ///< V with φ(a) = V(a⊗I_l)V*
  double residual = 0.0;  ///< max_ij ‖φ(e_ij) − V(e_ij⊗I_l)V*‖_F
};

/// Multiplicity-space form of a unital *-homomorphism: V(e_i⊗f_j) =
/// φ(e_{i1})·w_j where {w_j} is an orthonormal basis of range φ(e_{11}).
///
/// With `gauge_seed` set, the basis {w_j} is rotated by a seeded Haar
/// unitary of size l; the result then differs from the default by
/// V ↦ V(I_k⊗h).
inline HomDecomposition decompose_hom(const StarHom& phi, const ToleranceConfig& cfg,
                                      std::optional<std::uint64_t> gauge_seed = std::nullopt) {
  const int k = phi.k();
  const int l = phi.multiplicity();
  const int n = phi.n();
  ComplexMatrix w = range_basis(phi.unit(0, 0), cfg.rank_cutoff());
  if (w.cols() != l)
    throw NumericalError("decompose_hom: rank of phi(e11) is " + std::to_string(w.cols()) +
                         ", expected " + std::to_string(l));
  if (gauge_seed) w = w * haar_unitary(l, *gauge_seed).matrix();

  ComplexMatrix v(n, n);
  for (int i = 0; i < k; ++i) {
    ComplexMatrix cols = phi.unit(i, 0) * w;
    for (int j = 0; j < l; ++j) v.col(i * l + j) = cols.col(j);
  }

  HomDecomposition out{UnitaryMatrix::trusted(v), 0.0};
  const ComplexMatrix id_l = identity(l);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      ComplexMatrix rebuilt = v * kron(matrix_unit(k, i, j), id_l) * v.adjoint();
      out.residual = std::max(out.residual, frobenius(phi.unit(i, j) - rebuilt));
    }
  out.residual = std::max(out.residual, unitarity_residual(v));
  if (!(out.residual <= 10.0 * cfg.abs_tol))
    throw NumericalError("decompose_hom: reconstruction residual " +
                         std::to_string(out.residual) + " exceeds tolerance");
  return out;
}

/// Matrix units of the commutant of image(A) in M_n, an algebra ≅ M_l.
///
/// The commutant dimension is computed independently from the linear
/// commutation system and must equal l² exactly.
inline StarHom centralizer(const KSubalgebra& a, const ToleranceConfig& cfg) {
  const StarHom& phi = a.generator();
  const int k = phi.k();
  const int l = phi.multiplicity();
  const int dim = intertwiner_space_dimension(phi, phi, cfg);
  if (dim != l * l)
    throw NumericalError("centralizer: commutant has dimension " + std::to_string(dim) +
                         ", expected " + std::to_string(l * l));

  HomDecomposition dec = decompose_hom(phi, cfg);
  const ComplexMatrix& v = dec.isometry.matrix();
  std::vector<ComplexMatrix> units;
  units.reserve(static_cast<std::size_t>(l) * l);
  for (int p = 0; p < l; ++p)
    for (int q = 0; q < l; ++q)
      units.push_back(v * kron(identity(k), matrix_unit(l, p, q)) * v.adjoint());
  StarHom out(l, phi.n(), std::move(units));

  double comm = commutator_residual(phi, out);
  if (!(comm <= 10.0 * cfg.abs_tol))
    throw NumericalError("centralizer: commutator residual " + std::to_string(comm));
  return out;
}

struct NoetherSkolemResult {
  UnitaryMatrix unitary; ///< U with ψ = Ad(U)∘φ
  double residual = 0.0; ///< max_ij ‖ψ(e_ij) − Uφ(e_ij)U*‖_F
  int attempts = 0;
};

inline double conjugation_residual(const StarHom& phi, const StarHom& psi, const ComplexMatrix& u) {
  double worst = 0.0;
  for (std::size_t i = 0; i < phi.units().size(); ++i)
    worst = std::max(worst, frobenius(psi.units()[i] - u * phi.units()[i] * u.adjoint()));
  return worst;
}

/// Ambient unitary U with ψ = Ad(U)∘φ.
///
/// S = Σ_i ψ(e_{i1})·Y·φ(e_{1i}) intertwines φ and ψ for every Y; a seeded
/// Gaussian Y gives an invertible S almost surely and its polar factor is
/// the answer. Near-singular S triggers a retry with a fresh Y.
inline NoetherSkolemResult noether_skolem(const StarHom& phi, const StarHom& psi,
                                          const ToleranceConfig& cfg) {
  if (phi.k() != psi.k() || phi.n() != psi.n())
    throw InputError("noether_skolem: homomorphisms must share source and target sizes");
  const int k = phi.k();
  const int n = phi.n();
  Rng rng(cfg.rng_seed);
  for (int attempt = 1; attempt <= cfg.retry_limit; ++attempt) {
    ComplexMatrix y = random_gaussian(n, n, rng);
    ComplexMatrix s = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < k; ++i) s += psi.unit(i, 0) * y * phi.unit(0, i);
    Eigen::JacobiSVD<ComplexMatrix> svd(s, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (!(svd.singularValues()(n - 1) > cfg.rank_cutoff())) continue;
    ComplexMatrix u = svd.matrixU() * svd.matrixV().adjoint();
    NoetherSkolemResult out{UnitaryMatrix::trusted(u), conjugation_residual(phi, psi, u), attempt};
    if (!(out.residual <= 10.0 * cfg.abs_tol))
      throw NumericalError("noether_skolem: residual " + std::to_string(out.residual) +
                           " exceeds tolerance; homomorphisms are not conjugate");
    return out;
  }
  throw NumericalError("noether_skolem: intertwiner singular after " +
                       std::to_string(cfg.retry_limit) + " attempts; inputs are inconsistent");
}

/// The isomorphism M_k⊗M_l → M_n, e_ij⊗f_pq ↦ a(e_ij)·b(f_pq), of a
/// subalgebra and its commutant.
inline StarHom joint_hom(const StarHom& a, const StarHom& b) {
  const int k = a.k();
  const int l = b.k();
  std::vector<ComplexMatrix> units(static_cast<std::size_t>(k * l) * (k * l));
  for (int i = 0; i < k; ++i)
    for (int p = 0; p < l; ++p)
      for (int j = 0; j < k; ++j)
        for (int q = 0; q < l; ++q)
          units[static_cast<std::size_t>((i * l + p) * (k * l) + (j * l + q))] =
              a.unit(i, j) * b.unit(p, q);
  return StarHom(k * l, a.n(), std::move(units));
}

struct AmbientResult {
  UnitaryMatrix unitary;
  double residual = 0.0; ///< worst deviation of Ad(u) from λ on A and μ on A'
};

/// The ambient automorphism Ad(u) of M_n restricting to λ on A and to μ on
/// the commutant A'. Unique up to a global phase.
///
/// λ and μ are given on matrix units (domain units ↦ image units). Both
/// sides are put in coordinates by decomposing the joint homomorphisms
/// M_k⊗M_l → M_n; u = V_B·V_A*. The seed in `cfg` fixes the (irrelevant)
/// gauge of each decomposition.
inline AmbientResult ambient_from_pair(const AlgebraIso& lambda, const AlgebraIso& mu,
                                       const ToleranceConfig& cfg) {
  const int n = lambda.domain.n();
  if (lambda.image.n() != n || mu.domain.n() != n || mu.image.n() != n)
    throw InputError("ambient_from_pair: all algebras must live in the same M_n");
  if (lambda.domain.k() != lambda.image.k() || mu.domain.k() != mu.image.k())
    throw InputError("ambient_from_pair: isomorphisms must preserve the matrix size");
  if (lambda.domain.k() * mu.domain.k() != n)
    throw InputError("ambient_from_pair: k·l must equal the ambient size");
  const double tol = 10.0 * cfg.abs_tol;
  double cs = commutator_residual(lambda.domain, mu.domain);
  double ct = commutator_residual(lambda.image, mu.image);
  if (!(cs <= tol) || !(ct <= tol))
    throw InputError("ambient_from_pair: mu's domain/image is not the centralizer of "
                     "lambda's (commutator residual " +
                     std::to_string(std::max(cs, ct)) + ")");

  HomDecomposition va = decompose_hom(joint_hom(lambda.domain, mu.domain), cfg,
                                      derive_seed(cfg.rng_seed, 1));
  HomDecomposition vb = decompose_hom(joint_hom(lambda.image, mu.image), cfg,
                                      derive_seed(cfg.rng_seed, 2));
  ComplexMatrix u = vb.isometry.matrix() * va.isometry.matrix().adjoint();

  AmbientResult out{UnitaryMatrix::trusted(u), 0.0};
  out.residual = std::max(conjugation_residual(lambda.domain, lambda.image, u),
                          conjugation_residual(mu.domain, mu.image, u));
  if (!(out.residual <= tol))
    throw NumericalError("ambient_from_pair: residual " + std::to_string(out.residual));
  return out;
}

} // namespace azumaya::matalg
