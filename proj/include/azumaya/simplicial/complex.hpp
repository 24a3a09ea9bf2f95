#pragma once

#include "azumaya/config.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace azumaya::simplicial {

using Simplex = std::vector<int>;

inline std::string to_string(const Simplex& s) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << ']';
  return os.str();
}

/// s with its i-th vertex removed.
inline Simplex face(const Simplex& s, std::size_t i) {
  Simplex f;
  f.reserve(s.size() - 1);
  for (std::size_t j = 0; j < s.size(); ++j)
    if (j != i) f.push_back(s[j]);
  return f;
}

/// Finite ordered simplicial complex. Simplices are strictly increasing
/// vertex tuples; the global vertex order fixes every orientation sign.
/// Per dimension, simplices are kept in lexicographic order, which is the
/// cochain coordinate order.
class SimplicialComplex {
public:
  /// Validates an explicit simplex list: vertices in range, tuples strictly
  /// increasing, no duplicates, every vertex present, closed under faces.
  static SimplicialComplex from_simplices(int vertex_count, const std::vector<Simplex>& simplices) {
    if (vertex_count < 1) throw InputError("complex: vertex_count must be positive");
    std::vector<std::set<Simplex>> by_dim;
    for (const auto& s : simplices) {
      check_tuple(vertex_count, s);
      if (by_dim.size() < s.size()) by_dim.resize(s.size());
      if (!by_dim[s.size() - 1].insert(s).second)
        throw InputError("complex: duplicate simplex " + to_string(s));
    }
    if (by_dim.empty() || static_cast<int>(by_dim[0].size()) != vertex_count)
      throw InputError("complex: every vertex 0.." + std::to_string(vertex_count - 1) +
                       " must be listed as a 0-simplex");
    for (std::size_t d = 1; d < by_dim.size(); ++d)
      for (const auto& s : by_dim[d])
        for (std::size_t i = 0; i < s.size(); ++i) {
          Simplex f = face(s, i);
          if (!by_dim[d - 1].count(f))
            throw InputError("complex: face " + to_string(f) + " of simplex " + to_string(s) +
                             " is missing");
        }
    return SimplicialComplex(vertex_count, by_dim);
  }

  /// Closure of a list of facets.
  static SimplicialComplex from_facets(int vertex_count, const std::vector<Simplex>& facets) {
    if (vertex_count < 1) throw InputError("complex: vertex_count must be positive");
    std::vector<std::set<Simplex>> by_dim(1);
    for (int v = 0; v < vertex_count; ++v) by_dim[0].insert(Simplex{v});
    for (const auto& s : facets) {
      check_tuple(vertex_count, s);
      add_closure(s, by_dim);
    }
    return SimplicialComplex(vertex_count, by_dim);
  }

  int vertex_count() const { return vertex_count_; }
  int dimension() const { return static_cast<int>(simplices_.size()) - 1; }

  std::size_t count(int q) const {
    if (q < 0 || q > dimension()) return 0;
    return simplices_[static_cast<std::size_t>(q)].size();
  }

  const std::vector<Simplex>& simplices(int q) const {
    static const std::vector<Simplex> empty;
    if (q < 0 || q > dimension()) return empty;
    return simplices_[static_cast<std::size_t>(q)];
  }

  const Simplex& simplex(int q, std::size_t i) const { return simplices(q)[i]; }

  std::optional<std::size_t> index_of(const Simplex& s) const {
    if (s.empty() || static_cast<int>(s.size()) - 1 > dimension()) return std::nullopt;
    const auto& m = index_[s.size() - 1];
    auto it = m.find(s);
    if (it == m.end()) return std::nullopt;
    return it->second;
  }

  std::size_t require_index(const Simplex& s) const {
    auto i = index_of(s);
    if (!i) throw InputError("complex: simplex " + to_string(s) + " is not in the complex");
    return *i;
  }

  /// All simplices in dimension order, the serialization order.
  std::vector<Simplex> all_simplices() const {
    std::vector<Simplex> out;
    for (const auto& d : simplices_) out.insert(out.end(), d.begin(), d.end());
    return out;
  }

  long euler_characteristic() const {
    long chi = 0;
    for (int q = 0; q <= dimension(); ++q)
      chi += (q % 2 == 0 ? 1 : -1) * static_cast<long>(count(q));
    return chi;
  }

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.vertex_count_ == b.vertex_count_ && a.simplices_ == b.simplices_;
  }

private:
  SimplicialComplex(int vertex_count, const std::vector<std::set<Simplex>>& by_dim)
      : vertex_count_(vertex_count) {
    std::size_t top = by_dim.size();
    while (top > 1 && by_dim[top - 1].empty()) --top;
    simplices_.resize(top);
    index_.resize(top);
    for (std::size_t d = 0; d < top; ++d) {
      simplices_[d].assign(by_dim[d].begin(), by_dim[d].end());
      for (std::size_t i = 0; i < simplices_[d].size(); ++i) index_[d].emplace(simplices_[d][i], i);
    }
  }

  static void check_tuple(int vertex_count, const Simplex& s) {
    if (s.empty()) throw InputError("complex: empty simplex");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] < 0 || s[i] >= vertex_count)
        throw InputError("complex: vertex " + std::to_string(s[i]) + " in " + to_string(s) +
                         " out of range");
      if (i > 0 && s[i] <= s[i - 1])
        throw InputError("complex: simplex " + to_string(s) + " is not strictly increasing");
    }
  }

  static void add_closure(const Simplex& s, std::vector<std::set<Simplex>>& by_dim) {
    if (by_dim.size() < s.size()) by_dim.resize(s.size());
    if (!by_dim[s.size() - 1].insert(s).second) return;
    if (s.size() > 1)
      for (std::size_t i = 0; i < s.size(); ++i) add_closure(face(s, i), by_dim);
  }

  int vertex_count_ = 0;
  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::map<Simplex, std::size_t>> index_;
};

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

inline ComplexPtr share(SimplicialComplex c) {
  return std::make_shared<const SimplicialComplex>(std::move(c));
}

// Bundled triangulations -------------------------------------------------

/// ∂Δ³, a 4-vertex 2-sphere.
inline SimplicialComplex tetrahedron_boundary() {
  return SimplicialComplex::from_facets(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

/// Boundary of a triangle, a 3-vertex circle.
inline SimplicialComplex circle3() {
  return SimplicialComplex::from_facets(3, {{0, 1}, {1, 2}, {0, 2}});
}

/// The minimal 6-vertex real projective plane.
inline SimplicialComplex rp2_6() {
  return SimplicialComplex::from_facets(6, {{0, 1, 2}, {0, 1, 3}, {0, 2, 4}, {0, 3, 5}, {0, 4, 5},
                                            {1, 2, 5}, {1, 3, 4}, {1, 4, 5}, {2, 3, 4}, {2, 3, 5}});
}

/// The 7-vertex (Möbius–Császár) torus.
inline SimplicialComplex torus7() {
  std::vector<Simplex> facets;
  for (int i = 0; i < 7; ++i) {
    for (const auto& t : {Simplex{i, (i + 1) % 7, (i + 3) % 7}, Simplex{i, (i + 2) % 7, (i + 3) % 7}}) {
      Simplex s = t;
      std::sort(s.begin(), s.end());
      facets.push_back(s);
    }
  }
  return SimplicialComplex::from_facets(7, facets);
}

/// Staircase triangulation of |X|×|Y|. Vertex (x, y) gets index
/// x·|V(Y)| + y; every monotone lattice path through a product of facets
/// is a simplex.
inline SimplicialComplex product(const SimplicialComplex& x, const SimplicialComplex& y) {
  const int ny = y.vertex_count();
  auto facets_of = [](const SimplicialComplex& c) {
    std::vector<Simplex> out;
    for (int q = 0; q <= c.dimension(); ++q)
      for (const auto& s : c.simplices(q)) {
        bool maximal = true;
        for (const auto& t : c.simplices(q + 1))
          if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
            maximal = false;
            break;
          }
        if (maximal) out.push_back(s);
      }
    return out;
  };
  std::vector<Simplex> facets;
  for (const auto& s : facets_of(x))
    for (const auto& t : facets_of(y)) {
      const std::size_t p = s.size() - 1;
      const std::size_t q = t.size() - 1;
      // Enumerate shuffles: bit b set means step b advances the Y coordinate.
      for (unsigned mask = 0; mask < (1u << (p + q)); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != q) continue;
        std::size_t i = 0, j = 0;
        Simplex chain{s[0] * ny + t[0]};
        for (std::size_t b = 0; b < p + q; ++b) {
          if (mask & (1u << b)) ++j;
          else ++i;
          chain.push_back(s[i] * ny + t[j]);
        }
        facets.push_back(chain);
      }
    }
  return SimplicialComplex::from_facets(x.vertex_count() * ny, facets);
}

/// Unreduced suspension: two new apex vertices joined to everything.
inline SimplicialComplex suspension(const SimplicialComplex& x) {
  const int n = x.vertex_count();
  std::vector<Simplex> facets;
  for (int q = 0; q <= x.dimension(); ++q)
    for (const auto& s : x.simplices(q))
      for (int apex : {n, n + 1}) {
        Simplex f = s;
        f.push_back(apex);
        facets.push_back(f);
      }
  return SimplicialComplex::from_facets(n + 2, facets);
}

/// Cone with a new apex vertex (contractible).
inline SimplicialComplex cone(const SimplicialComplex& x) {
  const int n = x.vertex_count();
  std::vector<Simplex> facets;
  for (int q = 0; q <= x.dimension(); ++q)
    for (const auto& s : x.simplices(q)) {
      Simplex f = s;
      f.push_back(n);
      facets.push_back(f);
    }
  return SimplicialComplex::from_facets(n + 1, facets);
}

inline SimplicialComplex rp2_times_circle() { return product(rp2_6(), circle3()); }

} // namespace azumaya::simplicial
