#pragma once

#include "azumaya/matalg/matrix.hpp"

#include <string>
#include <utility>
#include <vector>

namespace azumaya::matalg {

/// A unital *-homomorphism M_k(ℂ) → M_n(ℂ), stored as the images of the
/// standard matrix units. `unit(i, j)` is φ(e_{ij}).
///
/// Construction only checks shapes (k | n, k² images of size n×n); the
/// algebraic relations are checked by `verify_star_hom`.
class StarHom {
public:
  StarHom() = default;

  StarHom(int k, int n, std::vector<ComplexMatrix> images)
      : k_(k), n_(n), images_(std::move(images)) {
    if (k < 1 || n < 1) throw InputError("StarHom: sizes must be positive");
    if (n % k != 0)
      throw InputError("StarHom: source size " + std::to_string(k) +
                       " does not divide target size " + std::to_string(n));
    if (images_.size() != static_cast<std::size_t>(k) * k)
      throw InputError("StarHom: expected k^2 = " + std::to_string(k * k) + " images, got " +
                       std::to_string(images_.size()));
    for (const auto& m : images_)
      if (m.rows() != n || m.cols() != n)
        throw InputError("StarHom: image of size " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected " + std::to_string(n));
  }

  int k() const { return k_; }
  int n() const { return n_; }
  int multiplicity() const { return n_ / k_; }

  const ComplexMatrix& unit(int i, int j) const { return images_[static_cast<std::size_t>(i * k_ + j)]; }
  const std::vector<ComplexMatrix>& units() const { return images_; }

  /// φ(a) = Σ a_{ij} φ(e_{ij}).
  ComplexMatrix apply(const ComplexMatrix& a) const {
    ComplexMatrix out = ComplexMatrix::Zero(n_, n_);
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j)
        if (a(i, j) != Complex(0.0)) out += a(i, j) * unit(i, j);
    return out;
  }

  /// Ad(u)∘φ.
  StarHom conjugated(const ComplexMatrix& u) const {
    std::vector<ComplexMatrix> out;
    out.reserve(images_.size());
    for (const auto& m : images_) out.push_back(u * m * u.adjoint());
    return StarHom(k_, n_, std::move(out));
  }

  /// φ∘Ad(w) for w ∈ U(k).
  StarHom precomposed(const ComplexMatrix& w) const {
    std::vector<ComplexMatrix> out;
    out.reserve(images_.size());
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j) out.push_back(apply(w * matrix_unit(k_, i, j) * w.adjoint()));
    return StarHom(k_, n_, std::move(out));
  }

private:
  int k_ = 0;
  int n_ = 0;
  std::vector<ComplexMatrix> images_;
};

/// a ↦ a ⊗ I_l.
inline StarHom standard_embedding(int k, int l) {
  std::vector<ComplexMatrix> units;
  units.reserve(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) units.push_back(kron(matrix_unit(k, i, j), identity(l)));
  return StarHom(k, k * l, std::move(units));
}

/// b ↦ I_k ⊗ b, the commutant of the standard embedding.
inline StarHom standard_commutant(int k, int l) {
  std::vector<ComplexMatrix> units;
  units.reserve(static_cast<std::size_t>(l) * l);
  for (int p = 0; p < l; ++p)
    for (int q = 0; q < l; ++q) units.push_back(kron(identity(k), matrix_unit(l, p, q)));
  return StarHom(l, k * l, std::move(units));
}

struct StarHomReport {
  bool pass = false;
  double unit_relation_residual = 0.0; ///< max ‖φ(e_ij)φ(e_pq) − δ_jp φ(e_iq)‖_F
  double unital_residual = 0.0;        ///< ‖Σ φ(e_ii) − I‖_F
  double adjoint_residual = 0.0;       ///< max ‖φ(e_ij)* − φ(e_ji)‖_F
  std::string worst_relation;          ///< label of the largest violation

  double max_residual() const {
    return std::max({unit_relation_residual, unital_residual, adjoint_residual});
  }
};

/// Evaluates all k⁴ matrix-unit products plus unitality and
/// *-compatibility.
inline StarHomReport verify_star_hom(const StarHom& phi, const ToleranceConfig& cfg) {
  StarHomReport r;
  const int k = phi.k();
  const int n = phi.n();
  double worst = -1.0;
  auto note = [&](double value, const std::string& label) {
    if (value > worst) {
      worst = value;
      r.worst_relation = label;
    }
  };

  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int p = 0; p < k; ++p)
        for (int q = 0; q < k; ++q) {
          ComplexMatrix prod = phi.unit(i, j) * phi.unit(p, q);
          if (j == p) prod -= phi.unit(i, q);
          double res = frobenius(prod);
          r.unit_relation_residual = std::max(r.unit_relation_residual, res);
          note(res, "e" + std::to_string(i) + std::to_string(j) + "*e" + std::to_string(p) +
                        std::to_string(q));
        }

  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < k; ++i) sum += phi.unit(i, i);
  r.unital_residual = frobenius(sum - identity(n));
  note(r.unital_residual, "unital");

  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      double res = frobenius(phi.unit(i, j).adjoint() - phi.unit(j, i));
      r.adjoint_residual = std::max(r.adjoint_residual, res);
      note(res, "adjoint e" + std::to_string(i) + std::to_string(j));
    }

  r.pass = r.max_residual() <= cfg.abs_tol;
  return r;
}

/// Coefficients of x in the orthogonal basis {φ(e_ij)} of image(φ);
/// ⟨φ(e_ij), φ(e_pq)⟩_F = l·δ.
inline ComplexMatrix span_coordinates(const StarHom& phi, const ComplexMatrix& x) {
  const int k = phi.k();
  const double l = phi.multiplicity();
  ComplexMatrix c(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) c(i, j) = (phi.unit(i, j).adjoint() * x).trace() / l;
  return c;
}

/// Distance from x to the linear span of image(φ).
inline double span_residual(const StarHom& phi, const ComplexMatrix& x) {
  return frobenius(x - phi.apply(span_coordinates(phi, x)));
}

/// max over units of ψ of their distance to span(image(φ)).
inline double containment_residual(const StarHom& phi, const StarHom& psi) {
  double worst = 0.0;
  for (const auto& u : psi.units()) worst = std::max(worst, span_residual(phi, u));
  return worst;
}

/// max ‖[a, b]‖_F over units a of φ and b of ψ.
inline double commutator_residual(const StarHom& phi, const StarHom& psi) {
  double worst = 0.0;
  for (const auto& a : phi.units())
    for (const auto& b : psi.units()) worst = std::max(worst, frobenius(a * b - b * a));
  return worst;
}

/// A point of Gr_{k,l}: the image of a unital *-homomorphism
/// M_k → M_{kl}. Two subalgebras compare equal when their images agree as
/// subspaces.
class KSubalgebra {
public:
  KSubalgebra() = default;
  explicit KSubalgebra(StarHom generator) : gen_(std::move(generator)) {}

  const StarHom& generator() const { return gen_; }
  int k() const { return gen_.k(); }
  int l() const { return gen_.multiplicity(); }
  int ambient() const { return gen_.n(); }

  bool same_subspace(const KSubalgebra& other, const ToleranceConfig& cfg) const {
    if (k() != other.k() || ambient() != other.ambient()) return false;
    return containment_residual(gen_, other.gen_) <= cfg.abs_tol &&
           containment_residual(other.gen_, gen_) <= cfg.abs_tol;
  }

private:
  StarHom gen_;
};

/// Standard embedding conjugated by a seeded Haar unitary of size kl.
inline KSubalgebra random_subalgebra(int k, int l, std::uint64_t seed) {
  if (k < 1 || l < 1) throw InputError("random_subalgebra: k and l must be >= 1");
  UnitaryMatrix w = haar_unitary(k * l, seed);
  return KSubalgebra(standard_embedding(k, l).conjugated(w.matrix()));
}

/// A *-isomorphism between two copies of M_k sitting inside matrix
/// algebras, recorded on matrix units: it sends `domain.unit(i,j)` to
/// `image.unit(i,j)`.
struct AlgebraIso {
  StarHom domain;
  StarHom image;

  /// Applies the isomorphism to an element of span(domain).
  ComplexMatrix apply(const ComplexMatrix& x) const {
    return image.apply(span_coordinates(domain, x));
  }

  AlgebraIso inverse() const { return {image, domain}; }

  /// this, then `next` (diagrammatic order). `next.domain` must span the
  /// same subalgebra as `image`.
  AlgebraIso then(const AlgebraIso& next) const {
    std::vector<ComplexMatrix> out;
    out.reserve(image.units().size());
    for (const auto& u : image.units()) out.push_back(next.apply(u));
    return {domain, StarHom(image.k(), next.image.n(), std::move(out))};
  }
};

/// max ‖φ(e_ij) − ψ(e_ij)‖_F.
inline double unit_distance(const StarHom& phi, const StarHom& psi) {
  if (phi.k() != psi.k() || phi.n() != psi.n())
    throw InputError("unit_distance: shape mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < phi.units().size(); ++i)
    worst = std::max(worst, frobenius(phi.units()[i] - psi.units()[i]));
  return worst;
}

} // namespace azumaya::matalg
