#pragma once

#include "azumaya/simplicial/cochain.hpp"

#include <numeric>
#include <string>
#include <vector>

namespace azumaya::simplicial {

/// Coordinates of a cohomology class: free part first, then one residue per
/// nontrivial invariant factor, normalized to [0, d).
struct ClassCoordinates {
  std::vector<BigInt> free;
  std::vector<BigInt> torsion;

  bool is_zero() const {
    for (const auto& x : free)
      if (!x.is_zero()) return false;
    for (const auto& x : torsion)
      if (!x.is_zero()) return false;
    return true;
  }
  friend bool operator==(const ClassCoordinates&, const ClassCoordinates&) = default;
};

inline std::string to_string(const ClassCoordinates& c) {
  std::string s = "(";
  bool first = true;
  for (const auto& x : c.free) {
    s += (first ? "" : ", ") + x.str();
    first = false;
  }
  s += " |";
  for (const auto& x : c.torsion) s += " " + x.str();
  return s + ")";
}

/// Raised by class_of when δc ≠ 0; names the first (q+1)-simplex where the
/// coboundary does not vanish.
class NotACocycle : public InputError {
public:
  NotACocycle(Simplex where, std::int64_t value)
      : InputError("not a cocycle: coboundary is " + std::to_string(value) + " on " +
                   to_string(where)),
        simplex(std::move(where)) {}
  Simplex simplex;
};

/// H^q(X; R) with an explicit presentation
/// ℤ^{free_rank} ⊕ ⊕ ℤ/torsion[i].
///
/// The q-cocycles form a lattice L (ker δ_q over ℤ, or {y : δ_q y ≡ 0 mod k}
/// over ℤ/k) and the coboundaries a sublattice M (im δ_{q-1}, plus k·ℤⁿ for
/// ℤ/k). Two Smith forms present L/M: one of δ_q gives a basis of L, one of
/// M's generators written in that basis gives the invariant factors and the
/// coordinate change.
class CohomologyGroup {
public:
  CohomologyGroup(ComplexPtr complex, int degree, Ring ring)
      : complex_(std::move(complex)), degree_(degree), ring_(ring) {
    if (!complex_) throw InputError("cohomology: null complex");
    if (degree_ < 0) throw InputError("cohomology: degree must be >= 0");
    compute();
  }

  const ComplexPtr& complex() const { return complex_; }
  int degree() const { return degree_; }
  Ring ring() const { return ring_; }
  std::size_t free_rank() const { return free_rank_; }
  /// Nontrivial invariant factors, each dividing the next.
  const std::vector<BigInt>& torsion() const { return torsion_; }

  /// Representative cocycles: free generators first, then torsion
  /// generators, matching the coordinate layout.
  const std::vector<Cochain>& generators() const { return generators_; }

  bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }

  /// Coordinates of the class of c. Throws NotACocycle when δc ≠ 0 (checked
  /// exactly, in c's ring).
  ClassCoordinates class_of(const Cochain& c) const {
    if (!Cochain::same_complex(c.complex(), complex_))
      throw InputError("class_of: cochain lives on a different complex");
    if (c.degree() != degree_)
      throw InputError("class_of: degree " + std::to_string(c.degree()) + " does not match " +
                       std::to_string(degree_));
    if (!(c.ring() == ring_))
      throw InputError("class_of: ring " + c.ring().name() + " does not match " + ring_.name());
    Cochain dc = coboundary(c);
    for (std::size_t i = 0; i < dc.values().size(); ++i)
      if (dc[i] != 0) throw NotACocycle(complex_->simplex(degree_ + 1, i), dc[i]);
    return coordinates_unchecked(c);
  }

  /// The cocycle Σ coords·generators, reduced in the ring.
  Cochain representative(const ClassCoordinates& coords) const {
    if (coords.free.size() != free_rank_ || coords.torsion.size() != torsion_.size())
      throw InputError("representative: coordinate shape mismatch");
    Cochain out = Cochain::zero(complex_, degree_, ring_);
    std::size_t g = 0;
    for (const auto& x : coords.free) out = out + generators_[g++].scaled(to_int64(x));
    for (const auto& x : coords.torsion) out = out + generators_[g++].scaled(to_int64(x));
    return out;
  }

  std::string describe() const {
    std::string s;
    if (free_rank_ > 0) s = "Z" + (free_rank_ > 1 ? "^" + std::to_string(free_rank_) : "");
    for (const auto& d : torsion_) s += (s.empty() ? "" : " + ") + std::string("Z/") + d.str();
    return s.empty() ? "0" : s;
  }

private:
  void compute() {
    const auto& x = *complex_;
    const std::size_t n = x.count(degree_);
    const bool integral = ring_.is_integral();
    const BigInt k = ring_.modulus;

    SmithForm dq = smith_normal_form(coboundary_matrix(x, degree_));
    rank_q_ = dq.rank;
    right_q_ = dq.right;
    right_q_inv_ = dq.right_inverse;

    // Lattice L in x = R⁻¹y coordinates: over ℤ, x_i = 0 for i < rank;
    // over ℤ/k, x_i ∈ e_i·ℤ with e_i = k / gcd(d_i, k).
    scale_.assign(n, BigInt(1));
    first_coord_ = integral ? rank_q_ : 0;
    if (!integral)
      for (std::size_t i = 0; i < rank_q_; ++i) scale_[i] = k / gcd(dq.diagonal[i], k);
    const std::size_t lattice_dim = n - first_coord_;

    IntMatrix gens = coboundary_matrix(x, degree_ - 1);
    std::size_t extra = integral ? 0 : n;
    IntMatrix coords(lattice_dim, gens.cols() + extra);
    for (std::size_t c = 0; c < gens.cols() + extra; ++c) {
      std::vector<BigInt> y(n);
      if (c < gens.cols())
        for (std::size_t r = 0; r < n; ++r) y[r] = gens(r, c);
      else
        y[c - gens.cols()] = k;
      std::vector<BigInt> z = lattice_coordinates(y);
      for (std::size_t r = 0; r < lattice_dim; ++r) coords(r, c) = z[r];
    }

    SmithForm sm = smith_normal_form(std::move(coords));
    rank_m_ = sm.rank;
    left_m_ = std::move(sm.left);
    factors_ = sm.diagonal;
    for (const auto& d : factors_)
      if (d != 1) torsion_.push_back(d);
    free_rank_ = lattice_dim - rank_m_;

    // Generator for coordinate slot i is y = B·L_M⁻¹·e_i.
    auto build = [&](std::size_t slot) {
      std::vector<BigInt> z(lattice_dim);
      for (std::size_t r = 0; r < lattice_dim; ++r) z[r] = sm.left_inverse(r, slot);
      std::vector<BigInt> xs(n);
      for (std::size_t r = 0; r < lattice_dim; ++r) xs[first_coord_ + r] = z[r] * scale_[first_coord_ + r];
      std::vector<BigInt> y = right_q_.multiply(xs);
      std::vector<std::int64_t> v(n);
      for (std::size_t r = 0; r < n; ++r) v[r] = to_int64(integral ? y[r] : mod_floor(y[r], k));
      return Cochain(complex_, degree_, ring_, std::move(v));
    };
    for (std::size_t i = rank_m_; i < lattice_dim; ++i) generators_.push_back(build(i));
    for (std::size_t i = 0; i < rank_m_; ++i)
      if (factors_[i] != 1) generators_.push_back(build(i));
  }

  /// Coordinates in the basis of L of a vector y known to lie in L.
  std::vector<BigInt> lattice_coordinates(const std::vector<BigInt>& y) const {
    std::vector<BigInt> xs = right_q_inv_.multiply(y);
    std::vector<BigInt> z;
    z.reserve(xs.size() - first_coord_);
    for (std::size_t i = first_coord_; i < xs.size(); ++i) {
      if (BigInt(xs[i] % scale_[i]) != 0)
        throw NumericalError("cohomology: vector outside the cocycle lattice");
      z.push_back(xs[i] / scale_[i]);
    }
    return z;
  }

  ClassCoordinates coordinates_unchecked(const Cochain& c) const {
    std::vector<BigInt> y(c.values().size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = c[i];
    std::vector<BigInt> w = left_m_.multiply(lattice_coordinates(y));
    ClassCoordinates out;
    for (std::size_t i = rank_m_; i < w.size(); ++i) out.free.push_back(w[i]);
    for (std::size_t i = 0; i < rank_m_; ++i)
      if (factors_[i] != 1) out.torsion.push_back(mod_floor(w[i], factors_[i]));
    return out;
  }

  ComplexPtr complex_;
  int degree_ = 0;
  Ring ring_;

  std::size_t rank_q_ = 0;
  std::size_t first_coord_ = 0;
  std::vector<BigInt> scale_;
  IntMatrix right_q_, right_q_inv_;

  std::size_t rank_m_ = 0;
  std::vector<BigInt> factors_;
  IntMatrix left_m_;

  std::size_t free_rank_ = 0;
  std::vector<BigInt> torsion_;
  std::vector<Cochain> generators_;
};

inline CohomologyGroup cohomology(ComplexPtr x, int q, Ring ring) {
  return CohomologyGroup(std::move(x), q, ring);
}

struct BocksteinResult {
  Cochain integral_cochain; ///< b with δĉ = k·b
  ClassCoordinates coordinates;
};

/// Integral Bockstein ℤ/k → ℤ at cochain level: lift c to ĉ with values in
/// [0, k), divide δĉ by k, and take the class in H^{q+1}(X; ℤ).
/// `target` must be H^{q+1}(X; ℤ).
inline BocksteinResult bockstein(const Cochain& c, const CohomologyGroup& target) {
  if (c.ring().is_integral()) throw InputError("bockstein: expects a Z/k cochain");
  if (!target.ring().is_integral() || target.degree() != c.degree() + 1)
    throw InputError("bockstein: target must be integral cohomology in degree q+1");
  const std::int64_t k = c.ring().modulus;
  Cochain lift = c.with_ring(Ring::integers());
  Cochain d = coboundary(lift);
  std::vector<std::int64_t> b(d.values().size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (d[i] % k != 0)
      throw NotACocycle(c.complex()->simplex(c.degree() + 1, i), Ring::mod(k).reduce(d[i]));
    b[i] = d[i] / k;
  }
  Cochain bc(c.complex(), c.degree() + 1, Ring::integers(), std::move(b));
  ClassCoordinates coords = target.class_of(bc);
  return {bc, coords};
}

inline BocksteinResult bockstein(const Cochain& c) {
  return bockstein(c, cohomology(c.complex(), c.degree() + 1, Ring::integers()));
}

} // namespace azumaya::simplicial
