#pragma once

#include "azumaya/matalg/algebra.hpp"
#include "azumaya/simplicial/cohomology.hpp"

#include <optional>
#include <string>
#include <vector>

namespace azumaya::cech {

using matalg::Complex;
using matalg::ComplexMatrix;
using matalg::UnitaryMatrix;
using simplicial::Cochain;
using simplicial::ComplexPtr;
using simplicial::Ring;
using simplicial::Simplex;

/// Raised when an operation needs a cocycle that failed verification.
class VerificationError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// Čech PU(k)-cocycle on the open-star cover of a complex: one unitary per
/// edge α<β, normalized into SU(k). u_{βα} is u_{αβ}⁻¹ and is never stored.
class PUCocycle {
public:
  PUCocycle() = default;

  /// Checks unitarity of every edge value; values whose determinant is not
  /// already 1 within tolerance are rescaled with su_normalize.
  PUCocycle(ComplexPtr complex, int k, const std::vector<ComplexMatrix>& edges,
            const ToleranceConfig& cfg = {})
      : complex_(std::move(complex)), k_(k) {
    if (!complex_) throw InputError("PUCocycle: null complex");
    if (k_ < 1) throw InputError("PUCocycle: k must be positive");
    if (edges.size() != complex_->count(1))
      throw InputError("PUCocycle: expected " + std::to_string(complex_->count(1)) +
                       " edge values, got " + std::to_string(edges.size()));
    edges_.reserve(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (edges[e].rows() != k_ || edges[e].cols() != k_)
        throw InputError("PUCocycle: edge " + simplicial::to_string(complex_->simplex(1, e)) +
                         " has wrong size");
      UnitaryMatrix u;
      try {
        u = UnitaryMatrix(edges[e], cfg);
      } catch (const InputError& err) {
        throw InputError("PUCocycle: edge " + simplicial::to_string(complex_->simplex(1, e)) +
                         ": " + err.what());
      }
      if (std::abs(u.determinant() - Complex(1.0)) > cfg.abs_tol) u = matalg::su_normalize(u);
      edges_.push_back(std::move(u));
    }
  }

  static PUCocycle identity(ComplexPtr complex, int k) {
    std::vector<ComplexMatrix> e(complex->count(1), matalg::identity(k));
    return PUCocycle(std::move(complex), k, e);
  }

  const ComplexPtr& complex() const { return complex_; }
  int k() const { return k_; }
  const std::vector<UnitaryMatrix>& edge_values() const { return edges_; }

  /// u_{ab} for any ordered pair of adjacent vertices.
  ComplexMatrix edge(int a, int b) const {
    if (a < b) return edges_[complex_->require_index({a, b})].matrix();
    return edges_[complex_->require_index({b, a})].matrix().adjoint();
  }

  std::vector<ComplexMatrix> edge_matrices() const {
    std::vector<ComplexMatrix> out;
    out.reserve(edges_.size());
    for (const auto& u : edges_) out.push_back(u.matrix());
    return out;
  }

private:
  ComplexPtr complex_;
  int k_ = 0;
  std::vector<UnitaryMatrix> edges_;
};

struct PUCocycleReport {
  bool pass = false;
  std::vector<Complex> lambdas;        ///< per triangle, tr(D)/k
  std::vector<std::int64_t> exponents; ///< per triangle, m with λ ≈ e^{2πim/k}
  double worst_residual = 0.0;
  std::optional<Simplex> failing_triangle;
};

/// For every triangle α<β<γ the defect D = u_{αβ}u_{βγ}u_{αγ}⁻¹ must be a
/// scalar λ·I with λ a k-th root of unity.
inline PUCocycleReport verify_pu_cocycle(const PUCocycle& c, const ToleranceConfig& cfg) {
  PUCocycleReport r;
  const auto& x = *c.complex();
  const int k = c.k();
  const ComplexMatrix id = matalg::identity(k);
  for (const auto& t : x.simplices(2)) {
    ComplexMatrix d = c.edge(t[0], t[1]) * c.edge(t[1], t[2]) * c.edge(t[0], t[2]).adjoint();
    Complex lambda = d.trace() / static_cast<double>(k);
    double scalar_res = matalg::frobenius(d - lambda * id);
    double turns = std::arg(lambda) * k / matalg::kTwoPi;
    std::int64_t m = k == 1 ? 0 : Ring::mod(k).reduce(static_cast<std::int64_t>(std::llround(turns)));
    Complex root = std::polar(1.0, matalg::kTwoPi * static_cast<double>(m) / k);
    double root_res = std::abs(lambda - root) * std::sqrt(static_cast<double>(k));
    double res = std::max(scalar_res, root_res);
    r.lambdas.push_back(lambda);
    r.exponents.push_back(m);
    if (res > r.worst_residual) r.worst_residual = res;
    if (!(res <= cfg.abs_tol) && !r.failing_triangle) r.failing_triangle = t;
  }
  r.pass = !r.failing_triangle.has_value();
  return r;
}

/// The μ_k-valued defect as a ℤ/k 2-cochain (exponent base ζ = e^{2πi/k}).
/// Requires verification to pass; the result is checked to be a cocycle.
inline Cochain scalar_defect(const PUCocycle& c, const ToleranceConfig& cfg) {
  if (c.k() < 2) throw InputError("scalar_defect: k must be >= 2");
  PUCocycleReport r = verify_pu_cocycle(c, cfg);
  if (!r.pass)
    throw VerificationError("scalar_defect: cocycle fails verification at triangle " +
                            simplicial::to_string(*r.failing_triangle) + " (residual " +
                            std::to_string(r.worst_residual) + ")");
  Cochain m(c.complex(), 2, Ring::mod(c.k()), r.exponents);
  Cochain dm = simplicial::coboundary(m);
  if (!dm.is_zero()) throw VerificationError("scalar_defect: defect is not a cocycle");
  return m;
}

/// Edgewise Kronecker product, renormalized into SU(k·m).
inline PUCocycle tensor_cocycles(const PUCocycle& a, const PUCocycle& b,
                                 const ToleranceConfig& cfg = {}) {
  if (!Cochain::same_complex(a.complex(), b.complex()))
    throw InputError("tensor_cocycles: cocycles live on different complexes");
  std::vector<ComplexMatrix> e;
  e.reserve(a.edge_values().size());
  for (std::size_t i = 0; i < a.edge_values().size(); ++i)
    e.push_back(matalg::kron(a.edge_values()[i].matrix(), b.edge_values()[i].matrix()));
  return PUCocycle(a.complex(), a.k() * b.k(), e, cfg);
}

/// u_{αβ} ↦ w_α·u_{αβ}·w_β⁻¹.
inline PUCocycle gauge_transform(const PUCocycle& c, const std::vector<UnitaryMatrix>& w,
                                 const ToleranceConfig& cfg = {}) {
  const auto& x = *c.complex();
  if (w.size() != static_cast<std::size_t>(x.vertex_count()))
    throw InputError("gauge_transform: need one unitary per vertex");
  std::vector<ComplexMatrix> e;
  for (std::size_t i = 0; i < x.count(1); ++i) {
    const Simplex& s = x.simplex(1, i);
    e.push_back(w[static_cast<std::size_t>(s[0])].matrix() * c.edge_values()[i].matrix() *
                w[static_cast<std::size_t>(s[1])].matrix().adjoint());
  }
  return PUCocycle(c.complex(), c.k(), e, cfg);
}

/// u_{αβ} ↦ ζ^{d(αβ)}·u_{αβ} for a ℤ/k 1-cochain d.
inline PUCocycle twist_by_roots(const PUCocycle& c, const Cochain& d, const ToleranceConfig& cfg = {}) {
  if (d.degree() != 1 || d.ring().modulus != c.k())
    throw InputError("twist_by_roots: expects a Z/k 1-cochain");
  std::vector<ComplexMatrix> e;
  for (std::size_t i = 0; i < c.edge_values().size(); ++i)
    e.push_back(std::polar(1.0, matalg::kTwoPi * static_cast<double>(d[i]) / c.k()) *
                c.edge_values()[i].matrix());
  return PUCocycle(c.complex(), c.k(), e, cfg);
}

/// The U(k)-exact cocycle u_{αβ} = w_α·w_β⁻¹ of the trivial bundle End(ℂ^k).
inline PUCocycle exact_cocycle(ComplexPtr complex, const std::vector<UnitaryMatrix>& w,
                               const ToleranceConfig& cfg = {}) {
  if (w.empty()) throw InputError("exact_cocycle: no vertex unitaries");
  const int k = static_cast<int>(w.front().size());
  return gauge_transform(PUCocycle::identity(std::move(complex), k), w, cfg);
}

inline std::vector<UnitaryMatrix> random_vertex_unitaries(const simplicial::SimplicialComplex& x,
                                                          int k, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<UnitaryMatrix> w;
  for (int v = 0; v < x.vertex_count(); ++v) w.push_back(matalg::haar_unitary(k, rng));
  return w;
}

} // namespace azumaya::cech
