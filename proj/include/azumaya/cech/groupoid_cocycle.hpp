#pragma once

#include "azumaya/cech/pu_cocycle.hpp"

#include <string>
#include <vector>

namespace azumaya::cech {

using matalg::AlgebraIso;
using matalg::StarHom;

/// A 𝔊_{k,l}-valued Čech cocycle: a k-subalgebra A_α ⊂ M_{n_α} at every
/// vertex and, for every edge α<β, an isomorphism φ_{αβ}: A_α → A_β.
///
/// Vertex α lives in M_{n_α} with n_α = k·l^{m_α}. An edge requires equal
/// ambient sizes at its endpoints, so sizes can only change between
/// connected components.
///
/// φ_{αβ} is stored as the images φ_{αβ}(φ_α(e_ij)) of A_α's matrix units.
/// Composition is diagrammatic: the triangle identity reads
/// φ_{βγ}∘φ_{αβ} = φ_{αγ}.
struct GroupoidCocycle {
  ComplexPtr complex;
  int k = 0;
  int l = 1;
  std::vector<int> exponents;
  std::vector<StarHom> vertex_values;
  std::vector<StarHom> edge_values;

  int ambient(std::size_t vertex) const {
    int n = k;
    for (int i = 0; i < exponents[vertex]; ++i) n *= l;
    return n;
  }

  /// Checks shapes only; the algebra is checked by
  /// verify_groupoid_cocycle.
  void validate_shape() const {
    if (!complex) throw InputError("GroupoidCocycle: null complex");
    if (k < 1 || l < 1) throw InputError("GroupoidCocycle: k and l must be positive");
    const auto nv = static_cast<std::size_t>(complex->vertex_count());
    if (exponents.size() != nv || vertex_values.size() != nv)
      throw InputError("GroupoidCocycle: need one exponent and one subalgebra per vertex");
    if (edge_values.size() != complex->count(1))
      throw InputError("GroupoidCocycle: need one isomorphism per edge");
    for (std::size_t v = 0; v < nv; ++v) {
      if (exponents[v] < 0) throw InputError("GroupoidCocycle: negative exponent");
      const StarHom& h = vertex_values[v];
      if (h.k() != k || h.n() != ambient(v))
        throw InputError("GroupoidCocycle: vertex " + std::to_string(v) +
                         " subalgebra has wrong shape");
    }
    for (std::size_t e = 0; e < edge_values.size(); ++e) {
      const Simplex& s = complex->simplex(1, e);
      auto a = static_cast<std::size_t>(s[0]);
      auto b = static_cast<std::size_t>(s[1]);
      if (ambient(a) != ambient(b))
        throw InputError("GroupoidCocycle: edge " + simplicial::to_string(s) +
                         " joins different ambient sizes");
      if (edge_values[e].k() != k || edge_values[e].n() != ambient(b))
        throw InputError("GroupoidCocycle: edge " + simplicial::to_string(s) + " has wrong shape");
    }
  }

  /// φ_{ab} as an isomorphism A_a → A_b, for either orientation.
  AlgebraIso iso(int a, int b) const {
    if (a < b) {
      std::size_t e = complex->require_index({a, b});
      return {vertex_values[static_cast<std::size_t>(a)], edge_values[e]};
    }
    return iso(b, a).inverse();
  }
};

struct Finding {
  std::string location;
  double residual = 0.0;
};

struct GroupoidReport {
  bool pass = false;
  double worst_residual = 0.0;
  std::vector<Finding> failures;

  void record(std::string where, double residual, double tol) {
    worst_residual = std::max(worst_residual, residual);
    if (!(residual <= tol)) failures.push_back({std::move(where), residual});
  }
};

/// Checks that every vertex value is a valid *-homomorphism, that every
/// edge isomorphism lands in its target subalgebra, and the triangle
/// identity on A_α's matrix units.
inline GroupoidReport verify_groupoid_cocycle(const GroupoidCocycle& c, const ToleranceConfig& cfg) {
  c.validate_shape();
  GroupoidReport r;
  const auto& x = *c.complex;
  for (std::size_t v = 0; v < c.vertex_values.size(); ++v)
    r.record("vertex " + std::to_string(v),
             matalg::verify_star_hom(c.vertex_values[v], cfg).max_residual(), cfg.abs_tol);
  for (std::size_t e = 0; e < x.count(1); ++e) {
    const Simplex& s = x.simplex(1, e);
    const StarHom& target = c.vertex_values[static_cast<std::size_t>(s[1])];
    double res = std::max(matalg::verify_star_hom(c.edge_values[e], cfg).max_residual(),
                          matalg::containment_residual(target, c.edge_values[e]));
    r.record("edge " + simplicial::to_string(s), res, cfg.abs_tol);
  }
  for (const auto& t : x.simplices(2)) {
    AlgebraIso composite = c.iso(t[0], t[1]).then(c.iso(t[1], t[2]));
    double res = matalg::unit_distance(composite.image, c.iso(t[0], t[2]).image);
    r.record("triangle " + simplicial::to_string(t), res, cfg.abs_tol);
  }
  r.pass = r.failures.empty();
  return r;
}

/// χ: φ ⇒ ψ. `vertex_values[α]` holds χ_α(φ_α(e_ij)), the images of A_α's
/// matrix units inside ψ's ambient algebra at α.
struct NaturalTransformation {
  GroupoidCocycle source;
  GroupoidCocycle target;
  std::vector<StarHom> vertex_values;

  AlgebraIso at(int v) const {
    return {source.vertex_values[static_cast<std::size_t>(v)],
            vertex_values[static_cast<std::size_t>(v)]};
  }
};

/// Endpoint compatibility (χ_α lands in B_α) and naturality
/// ψ_{αβ}∘χ_α = χ_β∘φ_{αβ} on matrix units.
inline GroupoidReport verify_natural_transformation(const NaturalTransformation& chi,
                                                    const ToleranceConfig& cfg) {
  const auto& s = chi.source;
  const auto& t = chi.target;
  s.validate_shape();
  t.validate_shape();
  if (!Cochain::same_complex(s.complex, t.complex) || s.k != t.k)
    throw InputError("natural transformation: source and target differ in complex or k");
  const auto& x = *s.complex;
  if (chi.vertex_values.size() != static_cast<std::size_t>(x.vertex_count()))
    throw InputError("natural transformation: need one isomorphism per vertex");
  for (std::size_t v = 0; v < chi.vertex_values.size(); ++v) {
    const StarHom& h = chi.vertex_values[v];
    if (h.k() != s.k || h.n() != t.ambient(v))
      throw InputError("natural transformation: vertex " + std::to_string(v) + " has wrong shape");
  }

  GroupoidReport r;
  for (std::size_t v = 0; v < chi.vertex_values.size(); ++v) {
    double res = std::max(matalg::verify_star_hom(chi.vertex_values[v], cfg).max_residual(),
                          matalg::containment_residual(t.vertex_values[v], chi.vertex_values[v]));
    r.record("vertex " + std::to_string(v), res, cfg.abs_tol);
  }
  for (const auto& e : x.simplices(1)) {
    AlgebraIso lhs = chi.at(e[0]).then(t.iso(e[0], e[1]));
    AlgebraIso rhs = s.iso(e[0], e[1]).then(chi.at(e[1]));
    r.record("edge " + simplicial::to_string(e), matalg::unit_distance(lhs.image, rhs.image),
             cfg.abs_tol);
  }
  r.pass = r.failures.empty();
  return r;
}

/// Every vertex object is image(basepoint); edge α→β acts as
/// basepoint∘Ad(u_{αβ}⁻¹)∘basepoint⁻¹. The inverse makes the diagrammatic
/// triangle identity match u_{αβ}u_{βγ} ∝ u_{αγ}; the scalar defect is
/// invisible to the conjugations.
inline GroupoidCocycle induce_groupoid_cocycle(const PUCocycle& c, int l, const StarHom& basepoint,
                                               const ToleranceConfig& cfg) {
  if (basepoint.k() != c.k() || basepoint.n() != c.k() * l)
    throw InputError("induce_groupoid_cocycle: basepoint must embed M_k into M_{kl}");
  auto rep = matalg::verify_star_hom(basepoint, cfg);
  if (!rep.pass)
    throw InputError("induce_groupoid_cocycle: basepoint is not a *-homomorphism (worst " +
                     rep.worst_relation + ")");
  GroupoidCocycle out;
  out.complex = c.complex();
  out.k = c.k();
  out.l = l;
  const auto nv = static_cast<std::size_t>(c.complex()->vertex_count());
  out.exponents.assign(nv, 1);
  out.vertex_values.assign(nv, basepoint);
  for (const auto& u : c.edge_values()) out.edge_values.push_back(basepoint.precomposed(u.matrix().adjoint()));
  return out;
}

struct Skeleton {
  PUCocycle cocycle;
  NaturalTransformation witness; ///< from the input to induce(cocycle, 1, id)
};

/// Chooses M_k ≅ A_α via the vertex homomorphism itself and reads each
/// edge as an automorphism g_{αβ} of M_k, implemented by a unitary found
/// with decompose_hom. The PU cocycle uses u_{αβ} = V⁻¹ where g = Ad(V),
/// matching induce_groupoid_cocycle's convention.
inline Skeleton skeletonize(const GroupoidCocycle& c, const ToleranceConfig& cfg) {
  c.validate_shape();
  const auto& x = *c.complex;
  const int k = c.k;
  std::vector<ComplexMatrix> edges;
  for (std::size_t e = 0; e < x.count(1); ++e) {
    const Simplex& s = x.simplex(1, e);
    const StarHom& target = c.vertex_values[static_cast<std::size_t>(s[1])];
    std::vector<ComplexMatrix> g;
    g.reserve(static_cast<std::size_t>(k) * k);
    for (const auto& img : c.edge_values[e].units()) g.push_back(matalg::span_coordinates(target, img));
    auto dec = matalg::decompose_hom(StarHom(k, k, std::move(g)), cfg);
    edges.push_back(dec.isometry.matrix().adjoint());
  }
  Skeleton out;
  out.cocycle = PUCocycle(c.complex, k, edges, cfg);

  std::vector<ComplexMatrix> id_units;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) id_units.push_back(matalg::matrix_unit(k, i, j));
  StarHom id(k, k, id_units);

  out.witness.source = c;
  out.witness.target = induce_groupoid_cocycle(out.cocycle, 1, id, cfg);
  out.witness.vertex_values.assign(static_cast<std::size_t>(x.vertex_count()), id);
  return out;
}

} // namespace azumaya::cech
