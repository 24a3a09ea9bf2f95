#pragma once

#include "azumaya/cech/pu_cocycle.hpp"

#include <string>
#include <vector>

namespace azumaya::invariants {

using cech::PUCocycle;
using simplicial::Cochain;
using simplicial::ClassCoordinates;
using simplicial::CohomologyGroup;
using simplicial::ComplexPtr;
using simplicial::Ring;

/// The groups a Brauer class lives in: H²(X; ℤ/k) and H³(X; ℤ).
/// Build once per (complex, k) when classifying many cocycles.
struct BrauerGroups {
  CohomologyGroup h2;
  CohomologyGroup h3;

  BrauerGroups(const ComplexPtr& x, int k)
      : h2(x, 2, Ring::mod(k)), h3(x, 3, Ring::integers()) {}
};

struct BrauerClass {
  ComplexPtr complex;
  int k = 0;
  Cochain defect;             ///< ℤ/k 2-cocycle
  ClassCoordinates h2;        ///< in H²(X; ℤ/k)
  Cochain bockstein_cochain;  ///< integral 3-cocycle δ(lift)/k
  ClassCoordinates h3;        ///< in H³(X; ℤ); purely torsion

  bool is_zero() const { return h2.is_zero(); }
};

inline BrauerClass brauer_class(const PUCocycle& c, const BrauerGroups& groups,
                                const ToleranceConfig& cfg) {
  if (!Cochain::same_complex(c.complex(), groups.h2.complex()) ||
      groups.h2.ring().modulus != c.k())
    throw InputError("brauer_class: groups were built for a different complex or k");
  BrauerClass out;
  out.complex = c.complex();
  out.k = c.k();
  out.defect = cech::scalar_defect(c, cfg);
  out.h2 = groups.h2.class_of(out.defect);
  auto b = simplicial::bockstein(out.defect, groups.h3);
  out.bockstein_cochain = std::move(b.integral_cochain);
  out.h3 = std::move(b.coordinates);
  return out;
}

inline BrauerClass brauer_class(const PUCocycle& c, const ToleranceConfig& cfg) {
  return brauer_class(c, BrauerGroups(c.complex(), c.k()), cfg);
}

/// Clock Z = diag(ω^j) and shift X·e_j = e_{j+1}, ω = e^{2πi/k}; ZX = ωXZ.
inline ComplexMatrix clock_matrix(int k) {
  ComplexMatrix z = ComplexMatrix::Zero(k, k);
  for (int j = 0; j < k; ++j) z(j, j) = std::polar(1.0, matalg::kTwoPi * j / k);
  return z;
}

inline ComplexMatrix shift_matrix(int k) {
  ComplexMatrix x = ComplexMatrix::Zero(k, k);
  for (int j = 0; j < k; ++j) x((j + 1) % k, j) = 1.0;
  return x;
}

/// Sign s in [defect] = s·[a∪b] (+ the even-k correction below) for
/// realize_cup_cocycle. Checked against cohomology coordinates in the tests.
inline constexpr int kCupDefectSign = -1;

/// u_{αβ} = su_normalize(X^{a(αβ)}·Z^{b(αβ)}).
///
/// The raw products have defect ω^{b(αβ)·a(βγ)}, i.e. the cocycle b∪a,
/// cohomologous to −a∪b. For even k, the SU normalization contributes
/// (k/2)·(β̃a + β̃b) mod k, where β̃ is the integral Bockstein; this term
/// vanishes on complexes without 2-torsion in H², such as the torus.
inline PUCocycle realize_cup_cocycle(const Cochain& a, const Cochain& b, int k,
                                     const ToleranceConfig& cfg = {}) {
  for (const Cochain* c : {&a, &b}) {
    if (c->degree() != 1 || c->ring().modulus != k)
      throw InputError("realize_cup_cocycle: expects Z/" + std::to_string(k) + " 1-cochains");
    Cochain dc = simplicial::coboundary(*c);
    for (std::size_t i = 0; i < dc.values().size(); ++i)
      if (dc[i] != 0) throw simplicial::NotACocycle(c->complex()->simplex(2, i), dc[i]);
  }
  if (!Cochain::same_complex(a.complex(), b.complex()))
    throw InputError("realize_cup_cocycle: cochains live on different complexes");
  const ComplexMatrix x = shift_matrix(k);
  const ComplexMatrix z = clock_matrix(k);
  std::vector<ComplexMatrix> xp(static_cast<std::size_t>(k)), zp(static_cast<std::size_t>(k));
  xp[0] = zp[0] = matalg::identity(k);
  for (int i = 1; i < k; ++i) {
    xp[static_cast<std::size_t>(i)] = xp[static_cast<std::size_t>(i - 1)] * x;
    zp[static_cast<std::size_t>(i)] = zp[static_cast<std::size_t>(i - 1)] * z;
  }
  std::vector<ComplexMatrix> edges;
  for (std::size_t e = 0; e < a.values().size(); ++e) {
    ComplexMatrix u = xp[static_cast<std::size_t>(a[e])] * zp[static_cast<std::size_t>(b[e])];
    edges.push_back(matalg::su_normalize(UnitaryMatrix::trusted(u)).matrix());
  }
  return PUCocycle(a.complex(), k, edges, cfg);
}

/// The ℤ/k 2-cocycle whose class realize_cup_cocycle(a, b) produces.
inline Cochain expected_cup_defect(const Cochain& a, const Cochain& b) {
  const std::int64_t k = a.ring().modulus;
  Cochain out = simplicial::cup_product(a, b).scaled(kCupDefectSign);
  if (k % 2 == 0) {
    Cochain ba = simplicial::bockstein(a).integral_cochain.with_ring(a.ring());
    Cochain bb = simplicial::bockstein(b).integral_cochain.with_ring(a.ring());
    out = out + (ba + bb).scaled(k / 2);
  }
  return out;
}

} // namespace azumaya::invariants
