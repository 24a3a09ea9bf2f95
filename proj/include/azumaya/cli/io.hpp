#pragma once

#include "azumaya/azumaya.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace azumaya::cli {

using json = nlohmann::json;
using matalg::ComplexMatrix;
using matalg::StarHom;
using simplicial::Simplex;
using simplicial::SimplicialComplex;

inline constexpr const char* kSchemaVersion = "azumaya/1";

enum class Kind { Complex, PUCocycle, GroupoidCocycle, Loop, NatTrans };

inline std::string kind_name(Kind k) {
  switch (k) {
  case Kind::Complex: return "complex";
  case Kind::PUCocycle: return "pu-cocycle";
  case Kind::GroupoidCocycle: return "groupoid-cocycle";
  case Kind::Loop: return "loop";
  case Kind::NatTrans: return "nat-trans";
  }
  return "?";
}

inline Kind parse_kind(const std::string& s) {
  for (Kind k : {Kind::Complex, Kind::PUCocycle, Kind::GroupoidCocycle, Kind::Loop, Kind::NatTrans})
    if (kind_name(k) == s) return k;
  throw InputError("kind: unknown dataset kind '" + s + "'");
}

/// Edge data keyed by simplex; bound to a complex later.
template <class T> struct EdgeEntry {
  Simplex simplex;
  T value;
};

struct PUCocycleData {
  int k = 0;
  std::vector<EdgeEntry<ComplexMatrix>> edges;
};

struct GroupoidData {
  int k = 0;
  int l = 1;
  std::vector<int> exponents;
  std::vector<StarHom> vertices;
  std::vector<EdgeEntry<StarHom>> edges;
};

struct NatTransData {
  GroupoidData source;
  GroupoidData target;
  std::vector<StarHom> vertices;
};

using Payload = std::variant<SimplicialComplex, PUCocycleData, GroupoidData, invariants::ClutchingLoop,
                             NatTransData>;

struct Dataset {
  std::string schema = kSchemaVersion;
  Kind kind = Kind::Complex;
  Payload payload;
};

// Parsing ------------------------------------------------------------------

namespace detail {

inline const json& field(const json& j, const char* name, const std::string& at) {
  if (!j.is_object()) throw InputError(at + ": expected an object");
  auto it = j.find(name);
  if (it == j.end()) throw InputError(at + ": missing field '" + name + "'");
  return *it;
}

inline int as_int(const json& j, const std::string& at) {
  if (!j.is_number_integer()) throw InputError(at + ": expected an integer");
  auto v = j.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    throw InputError(at + ": integer out of range");
  return static_cast<int>(v);
}

inline const json& as_array(const json& j, const std::string& at) {
  if (!j.is_array()) throw InputError(at + ": expected an array");
  return j;
}

inline matalg::Complex as_complex(const json& j, const std::string& at) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError(at + ": expected a complex number [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline ComplexMatrix as_matrix(const json& j, const std::string& at, int size = -1) {
  as_array(j, at);
  const auto n = static_cast<Eigen::Index>(j.size());
  if (n == 0) throw InputError(at + ": empty matrix");
  if (size >= 0 && n != size)
    throw InputError(at + ": expected " + std::to_string(size) + " rows, got " + std::to_string(n));
  ComplexMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const std::string row_at = at + "[" + std::to_string(r) + "]";
    const json& row = as_array(j[static_cast<std::size_t>(r)], row_at);
    if (static_cast<Eigen::Index>(row.size()) != n)
      throw InputError(row_at + ": matrix must be square");
    for (Eigen::Index c = 0; c < n; ++c)
      m(r, c) = as_complex(row[static_cast<std::size_t>(c)], row_at + "[" + std::to_string(c) + "]");
  }
  return m;
}

inline Simplex as_simplex(const json& j, const std::string& at) {
  as_array(j, at);
  Simplex s;
  for (std::size_t i = 0; i < j.size(); ++i) s.push_back(as_int(j[i], at + "[" + std::to_string(i) + "]"));
  return s;
}

/// {"k": k, "n": n, "units": [k² matrices]} with e_ij at index i·k+j.
inline StarHom as_star_hom(const json& j, const std::string& at) {
  int k = as_int(field(j, "k", at), at + ".k");
  int n = as_int(field(j, "n", at), at + ".n");
  if (k < 1 || n < 1) throw InputError(at + ": k and n must be positive");
  const json& units = as_array(field(j, "units", at), at + ".units");
  if (units.size() != static_cast<std::size_t>(k) * static_cast<std::size_t>(k))
    throw InputError(at + ".units: expected " + std::to_string(k * k) + " matrix units");
  std::vector<ComplexMatrix> imgs;
  for (std::size_t i = 0; i < units.size(); ++i)
    imgs.push_back(as_matrix(units[i], at + ".units[" + std::to_string(i) + "]", n));
  try {
    return StarHom(k, n, std::move(imgs));
  } catch (const InputError& e) {
    throw InputError(at + ": " + e.what());
  }
}

inline void check_star_hom(const StarHom& h, const std::string& at, const ToleranceConfig& cfg) {
  auto r = matalg::verify_star_hom(h, cfg);
  if (!r.pass)
    throw InputError(at + ": not a unital *-homomorphism (" + r.worst_relation + ", residual " +
                     std::to_string(r.max_residual()) + ")");
}

inline SimplicialComplex parse_complex(const json& p, const std::string& at) {
  int nv = as_int(field(p, "vertex_count", at), at + ".vertex_count");
  const json& list = as_array(field(p, "simplices", at), at + ".simplices");
  std::vector<Simplex> simplices;
  for (std::size_t i = 0; i < list.size(); ++i)
    simplices.push_back(as_simplex(list[i], at + ".simplices[" + std::to_string(i) + "]"));
  try {
    return SimplicialComplex::from_simplices(nv, simplices);
  } catch (const InputError& e) {
    throw InputError(at + ": " + e.what());
  }
}

inline PUCocycleData parse_pu(const json& p, const std::string& at, const ToleranceConfig& cfg) {
  PUCocycleData d;
  d.k = as_int(field(p, "k", at), at + ".k");
  if (d.k < 1) throw InputError(at + ".k: must be positive");
  const json& edges = as_array(field(p, "edges", at), at + ".edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string e_at = at + ".edges[" + std::to_string(i) + "]";
    Simplex s = as_simplex(field(edges[i], "simplex", e_at), e_at + ".simplex");
    if (s.size() != 2 || s[0] >= s[1]) throw InputError(e_at + ".simplex: expected an edge [a, b] with a < b");
    ComplexMatrix m = as_matrix(field(edges[i], "matrix", e_at), e_at + ".matrix", d.k);
    double r = matalg::unitarity_residual(m);
    if (!(r <= cfg.abs_tol))
      throw InputError(e_at + ": edge " + simplicial::to_string(s) +
                       " is not unitary (residual " + std::to_string(r) + ")");
    d.edges.push_back({std::move(s), std::move(m)});
  }
  return d;
}

inline GroupoidData parse_groupoid(const json& p, const std::string& at, const ToleranceConfig& cfg) {
  GroupoidData d;
  d.k = as_int(field(p, "k", at), at + ".k");
  d.l = as_int(field(p, "l", at), at + ".l");
  const json& ex = as_array(field(p, "exponents", at), at + ".exponents");
  for (std::size_t i = 0; i < ex.size(); ++i)
    d.exponents.push_back(as_int(ex[i], at + ".exponents[" + std::to_string(i) + "]"));
  const json& vs = as_array(field(p, "vertices", at), at + ".vertices");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string v_at = at + ".vertices[" + std::to_string(i) + "]";
    d.vertices.push_back(as_star_hom(vs[i], v_at));
    check_star_hom(d.vertices.back(), v_at, cfg);
  }
  const json& es = as_array(field(p, "edges", at), at + ".edges");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string e_at = at + ".edges[" + std::to_string(i) + "]";
    Simplex s = as_simplex(field(es[i], "simplex", e_at), e_at + ".simplex");
    if (s.size() != 2 || s[0] >= s[1]) throw InputError(e_at + ".simplex: expected an edge [a, b] with a < b");
    d.edges.push_back({std::move(s), as_star_hom(field(es[i], "map", e_at), e_at + ".map")});
  }
  return d;
}

inline invariants::ClutchingLoop parse_loop(const json& p, const std::string& at, const ToleranceConfig& cfg) {
  const json& variant = field(p, "variant", at);
  if (!variant.is_string()) throw InputError(at + ".variant: expected a string");
  const json& samples = as_array(field(p, "samples", at), at + ".samples");
  try {
    if (variant == "unitary") {
      std::vector<ComplexMatrix> s;
      int k = as_int(field(p, "k", at), at + ".k");
      for (std::size_t i = 0; i < samples.size(); ++i)
        s.push_back(as_matrix(samples[i], at + ".samples[" + std::to_string(i) + "]", k));
      return invariants::ClutchingLoop::unitary(std::move(s), cfg);
    }
    if (variant == "embedding") {
      std::vector<StarHom> s;
      for (std::size_t i = 0; i < samples.size(); ++i)
        s.push_back(as_star_hom(samples[i], at + ".samples[" + std::to_string(i) + "]"));
      return invariants::ClutchingLoop::embedding(std::move(s), cfg);
    }
  } catch (const InputError& e) {
    std::string msg = e.what();
    if (msg.rfind(at, 0) == 0) throw;
    throw InputError(at + ": " + msg);
  }
  throw InputError(at + ".variant: expected 'unitary' or 'embedding'");
}

} // namespace detail

inline Dataset parse_dataset(const json& j, const ToleranceConfig& cfg = {}) {
  const std::string at = "$";
  const json& schema = detail::field(j, "schema", at);
  if (!schema.is_string() || schema.get<std::string>() != kSchemaVersion)
    throw InputError("$.schema: expected \"" + std::string(kSchemaVersion) + "\"");
  const json& kind = detail::field(j, "kind", at);
  if (!kind.is_string()) throw InputError("$.kind: expected a string");
  const Kind k = parse_kind(kind.get<std::string>());
  const json& p = detail::field(j, "payload", at);
  const std::string pat = "$.payload";
  auto payload = [&]() -> Payload {
    switch (k) {
    case Kind::Complex: return detail::parse_complex(p, pat);
    case Kind::PUCocycle: return detail::parse_pu(p, pat, cfg);
    case Kind::GroupoidCocycle: return detail::parse_groupoid(p, pat, cfg);
    case Kind::Loop: return detail::parse_loop(p, pat, cfg);
    case Kind::NatTrans: break;
    }
    NatTransData n;
    n.source = detail::parse_groupoid(detail::field(p, "source", pat), pat + ".source", cfg);
    n.target = detail::parse_groupoid(detail::field(p, "target", pat), pat + ".target", cfg);
    const json& vs = detail::as_array(detail::field(p, "vertices", pat), pat + ".vertices");
    for (std::size_t i = 0; i < vs.size(); ++i)
      n.vertices.push_back(detail::as_star_hom(vs[i], pat + ".vertices[" + std::to_string(i) + "]"));
    return n;
  };
  return Dataset{kSchemaVersion, k, payload()};
}

inline Dataset load(const std::string& path, const ToleranceConfig& cfg = {}) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": parse error: " + e.what());
  }
  try {
    return parse_dataset(j, cfg);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

// Serialization ------------------------------------------------------------

inline json to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json to_json(const StarHom& h) {
  json units = json::array();
  for (const auto& u : h.units()) units.push_back(to_json(u));
  return {{"k", h.k()}, {"n", h.n()}, {"units", std::move(units)}};
}

inline json to_json(const SimplicialComplex& x) {
  json s = json::array();
  for (const auto& simplex : x.all_simplices()) s.push_back(simplex);
  return {{"vertex_count", x.vertex_count()}, {"simplices", std::move(s)}};
}

inline json to_json(const PUCocycleData& d) {
  json edges = json::array();
  for (const auto& e : d.edges) edges.push_back({{"simplex", e.simplex}, {"matrix", to_json(e.value)}});
  return {{"k", d.k}, {"edges", std::move(edges)}};
}

inline json to_json(const GroupoidData& d) {
  json vs = json::array();
  for (const auto& v : d.vertices) vs.push_back(to_json(v));
  json es = json::array();
  for (const auto& e : d.edges) es.push_back({{"simplex", e.simplex}, {"map", to_json(e.value)}});
  return {{"k", d.k}, {"l", d.l}, {"exponents", d.exponents}, {"vertices", std::move(vs)},
          {"edges", std::move(es)}};
}

inline json to_json(const invariants::ClutchingLoop& loop) {
  json samples = json::array();
  if (loop.variant() == invariants::ClutchingLoop::Variant::Unitary) {
    for (const auto& u : loop.unitaries()) samples.push_back(to_json(u));
    return {{"variant", "unitary"}, {"k", loop.k()}, {"samples", std::move(samples)}};
  }
  for (const auto& h : loop.embeddings()) samples.push_back(to_json(h));
  return {{"variant", "embedding"}, {"k", loop.k()}, {"samples", std::move(samples)}};
}

inline json to_json(const NatTransData& d) {
  json vs = json::array();
  for (const auto& v : d.vertices) vs.push_back(to_json(v));
  return {{"source", to_json(d.source)}, {"target", to_json(d.target)}, {"vertices", std::move(vs)}};
}

inline json serialize(const Dataset& d) {
  json payload = std::visit([](const auto& p) { return to_json(p); }, d.payload);
  return {{"schema", d.schema}, {"kind", kind_name(d.kind)}, {"payload", std::move(payload)}};
}

inline void save(const Dataset& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot write file");
  out << serialize(d).dump(1) << '\n';
}

// Conversions between typed data and module objects ------------------------

inline PUCocycleData from_cocycle(const cech::PUCocycle& c) {
  PUCocycleData d;
  d.k = c.k();
  const auto& x = *c.complex();
  for (std::size_t e = 0; e < x.count(1); ++e) d.edges.push_back({x.simplex(1, e), c.edge_values()[e].matrix()});
  return d;
}

inline GroupoidData from_groupoid(const cech::GroupoidCocycle& c) {
  GroupoidData d;
  d.k = c.k;
  d.l = c.l;
  d.exponents = c.exponents;
  d.vertices = c.vertex_values;
  const auto& x = *c.complex;
  for (std::size_t e = 0; e < x.count(1); ++e) d.edges.push_back({x.simplex(1, e), c.edge_values[e]});
  return d;
}

inline NatTransData from_nat_trans(const cech::NaturalTransformation& n) {
  return {from_groupoid(n.source), from_groupoid(n.target), n.vertex_values};
}

namespace detail {

/// Orders edge entries by the complex's edge list; every edge exactly once.
template <class T>
std::vector<T> bind_edges(const std::vector<EdgeEntry<T>>& entries, const SimplicialComplex& x,
                          const std::string& what) {
  std::vector<std::optional<T>> slots(x.count(1));
  for (const auto& e : entries) {
    auto idx = x.index_of(e.simplex);
    if (!idx || e.simplex.size() != 2)
      throw InputError(what + ": edge " + simplicial::to_string(e.simplex) + " is not in the complex");
    if (slots[*idx]) throw InputError(what + ": edge " + simplicial::to_string(e.simplex) + " given twice");
    slots[*idx] = e.value;
  }
  std::vector<T> out;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) throw InputError(what + ": missing edge " + simplicial::to_string(x.simplex(1, i)));
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

} // namespace detail

inline cech::PUCocycle bind(const PUCocycleData& d, const simplicial::ComplexPtr& x,
                            const ToleranceConfig& cfg) {
  return cech::PUCocycle(x, d.k, detail::bind_edges(d.edges, *x, "pu-cocycle"), cfg);
}

inline cech::GroupoidCocycle bind(const GroupoidData& d, const simplicial::ComplexPtr& x) {
  cech::GroupoidCocycle c;
  c.complex = x;
  c.k = d.k;
  c.l = d.l;
  c.exponents = d.exponents;
  c.vertex_values = d.vertices;
  c.edge_values = detail::bind_edges(d.edges, *x, "groupoid-cocycle");
  c.validate_shape();
  return c;
}

inline cech::NaturalTransformation bind(const NatTransData& d, const simplicial::ComplexPtr& x) {
  return {bind(d.source, x), bind(d.target, x), d.vertices};
}

template <class T> const T& expect(const Dataset& d, Kind kind, const std::string& what) {
  if (d.kind != kind)
    throw InputError(what + ": expected a " + kind_name(kind) + " dataset, got " + kind_name(d.kind));
  return std::get<T>(d.payload);
}

} // namespace azumaya::cli
