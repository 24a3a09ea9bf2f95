#pragma once

#include "azumaya/simplicial/complex.hpp"
#include "azumaya/simplicial/smith.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace azumaya::simplicial {

/// Coefficient ring: ℤ when `modulus == 0`, otherwise ℤ/modulus.
struct Ring {
  std::int64_t modulus = 0;

  static Ring integers() { return {0}; }
  static Ring mod(std::int64_t k) {
    if (k < 2) throw InputError("Ring: modulus must be >= 2");
    return {k};
  }
  bool is_integral() const { return modulus == 0; }
  std::int64_t reduce(std::int64_t x) const {
    if (modulus == 0) return x;
    std::int64_t r = x % modulus;
    return r < 0 ? r + modulus : r;
  }
  std::string name() const { return modulus == 0 ? "Z" : "Z/" + std::to_string(modulus); }
  friend bool operator==(const Ring&, const Ring&) = default;
};

/// A q-cochain: one coefficient per q-simplex, in the complex's
/// lexicographic simplex order. ℤ/k values are kept in [0, k).
class Cochain {
public:
  Cochain() = default;

  Cochain(ComplexPtr complex, int degree, Ring ring, std::vector<std::int64_t> values)
      : complex_(std::move(complex)), degree_(degree), ring_(ring), values_(std::move(values)) {
    if (!complex_) throw InputError("Cochain: null complex");
    if (degree_ < 0) throw InputError("Cochain: negative degree");
    if (values_.size() != complex_->count(degree_))
      throw InputError("Cochain: expected " + std::to_string(complex_->count(degree_)) +
                       " values in degree " + std::to_string(degree_) + ", got " +
                       std::to_string(values_.size()));
    for (auto& v : values_) v = ring_.reduce(v);
  }

  static Cochain zero(ComplexPtr complex, int degree, Ring ring) {
    std::size_t n = complex->count(degree);
    return Cochain(std::move(complex), degree, ring, std::vector<std::int64_t>(n, 0));
  }

  /// The constant 0-cochain 1.
  static Cochain unit(ComplexPtr complex, Ring ring) {
    std::size_t n = complex->count(0);
    return Cochain(std::move(complex), 0, ring, std::vector<std::int64_t>(n, 1));
  }

  static Cochain random(ComplexPtr complex, int degree, Ring ring, Rng& rng,
                        std::int64_t spread = 5) {
    std::uniform_int_distribution<std::int64_t> dist(
        ring.is_integral() ? -spread : 0, ring.is_integral() ? spread : ring.modulus - 1);
    std::vector<std::int64_t> v(complex->count(degree));
    for (auto& x : v) x = dist(rng);
    return Cochain(std::move(complex), degree, ring, std::move(v));
  }

  const ComplexPtr& complex() const { return complex_; }
  int degree() const { return degree_; }
  Ring ring() const { return ring_; }
  const std::vector<std::int64_t>& values() const { return values_; }
  std::int64_t operator[](std::size_t i) const { return values_[i]; }
  std::int64_t at(const Simplex& s) const { return values_[complex_->require_index(s)]; }

  bool is_zero() const {
    for (auto v : values_)
      if (v != 0) return false;
    return true;
  }

  /// Same values viewed in ℤ/k (reduction) or, for a ℤ/k cochain, its lift
  /// with representatives in [0, k).
  Cochain with_ring(Ring r) const { return Cochain(complex_, degree_, r, values_); }

  Cochain scaled(std::int64_t f) const {
    std::vector<std::int64_t> v = values_;
    for (auto& x : v) x *= f;
    return Cochain(complex_, degree_, ring_, std::move(v));
  }

  friend Cochain operator+(const Cochain& a, const Cochain& b) {
    a.require_compatible(b, "+");
    std::vector<std::int64_t> v = a.values_;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += b.values_[i];
    return Cochain(a.complex_, a.degree_, a.ring_, std::move(v));
  }
  friend Cochain operator-(const Cochain& a, const Cochain& b) { return a + b.scaled(-1); }

  friend bool operator==(const Cochain& a, const Cochain& b) {
    return same_complex(a.complex_, b.complex_) && a.degree_ == b.degree_ && a.ring_ == b.ring_ &&
           a.values_ == b.values_;
  }

  static bool same_complex(const ComplexPtr& a, const ComplexPtr& b) {
    return a == b || (a && b && *a == *b);
  }

private:
  void require_compatible(const Cochain& o, const char* op) const {
    if (!same_complex(complex_, o.complex_) || degree_ != o.degree_ || !(ring_ == o.ring_))
      throw InputError(std::string("Cochain ") + op + ": incompatible operands");
  }

  ComplexPtr complex_;
  int degree_ = 0;
  Ring ring_;
  std::vector<std::int64_t> values_;
};

/// Integer matrix of δ_q: C^q → C^{q+1}, (δc)(σ) = Σ_i (−1)^i c(∂_i σ).
inline IntMatrix coboundary_matrix(const SimplicialComplex& x, int q) {
  if (q < -1) throw InputError("coboundary_matrix: degree must be >= -1");
  IntMatrix d(x.count(q + 1), q < 0 ? 0 : x.count(q));
  if (q < 0) return d;
  const auto& upper = x.simplices(q + 1);
  for (std::size_t r = 0; r < upper.size(); ++r)
    for (std::size_t i = 0; i < upper[r].size(); ++i)
      d(r, x.require_index(face(upper[r], i))) += (i % 2 == 0) ? 1 : -1;
  return d;
}

/// δc computed directly on values, reduced in c's ring.
inline Cochain coboundary(const Cochain& c) {
  const auto& x = *c.complex();
  const int q = c.degree();
  const auto& upper = x.simplices(q + 1);
  std::vector<std::int64_t> out(upper.size(), 0);
  for (std::size_t r = 0; r < upper.size(); ++r)
    for (std::size_t i = 0; i < upper[r].size(); ++i) {
      std::int64_t v = c[x.require_index(face(upper[r], i))];
      out[r] += (i % 2 == 0) ? v : -v;
    }
  return Cochain(c.complex(), q + 1, c.ring(), std::move(out));
}

/// Alexander–Whitney cup product:
/// (a∪b)(v_0..v_{p+q}) = a(v_0..v_p)·b(v_p..v_{p+q}).
inline Cochain cup_product(const Cochain& a, const Cochain& b) {
  if (!Cochain::same_complex(a.complex(), b.complex()))
    throw InputError("cup_product: cochains live on different complexes");
  if (!(a.ring() == b.ring())) throw InputError("cup_product: coefficient rings differ");
  const auto& x = *a.complex();
  const int p = a.degree();
  const int q = b.degree();
  const auto& top = x.simplices(p + q);
  std::vector<std::int64_t> out(top.size(), 0);
  for (std::size_t r = 0; r < top.size(); ++r) {
    const Simplex& s = top[r];
    Simplex front(s.begin(), s.begin() + p + 1);
    Simplex back(s.begin() + p, s.end());
    std::int64_t va = a[x.require_index(front)];
    std::int64_t vb = b[x.require_index(back)];
    out[r] = a.ring().reduce(va * vb);
  }
  return Cochain(a.complex(), p + q, a.ring(), std::move(out));
}

/// Pullback along a simplicial map given on vertices, f: X → Y with c on Y.
/// The vertex map must be order-preserving on every simplex of X; simplices
/// that collapse get value 0.
inline Cochain pullback(const Cochain& c, ComplexPtr source, const std::vector<int>& vertex_map) {
  const auto& x = *source;
  const auto& y = *c.complex();
  if (vertex_map.size() != static_cast<std::size_t>(x.vertex_count()))
    throw InputError("pullback: vertex map has the wrong length");
  const auto& simplices = x.simplices(c.degree());
  std::vector<std::int64_t> out(simplices.size(), 0);
  for (std::size_t r = 0; r < simplices.size(); ++r) {
    Simplex image;
    bool degenerate = false;
    for (int v : simplices[r]) {
      int w = vertex_map[static_cast<std::size_t>(v)];
      if (!image.empty() && w <= image.back()) {
        if (w < image.back()) throw InputError("pullback: vertex map reverses " + to_string(simplices[r]));
        degenerate = true;
      }
      image.push_back(w);
    }
    if (!degenerate) out[r] = c[y.require_index(image)];
  }
  return Cochain(std::move(source), c.degree(), c.ring(), std::move(out));
}

} // namespace azumaya::simplicial
