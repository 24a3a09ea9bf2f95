// Regenerates the bundled data/ corpus. Usage: make_corpus <output-dir>
#include "azumaya/cli/io.hpp"

#include <filesystem>
#include <iostream>

using namespace azumaya;
using cli::Dataset;
using cli::Kind;

namespace {

std::filesystem::path out_dir;

void write(const std::string& name, const Dataset& d) {
  cli::save(d, (out_dir / name).string());
  std::cout << "wrote " << name << '\n';
}

void write_complex(const std::string& name, const simplicial::SimplicialComplex& x) {
  write(name, {cli::kSchemaVersion, Kind::Complex, x});
}

void write_cocycle(const std::string& name, const cech::PUCocycle& c) {
  write(name, {cli::kSchemaVersion, Kind::PUCocycle, cli::from_cocycle(c)});
}

void write_loop(const std::string& name, const invariants::ClutchingLoop& l) {
  write(name, {cli::kSchemaVersion, Kind::Loop, l});
}

/// Pulls a ℤ/k 1-class on a factor back to the product X×Y.
simplicial::Cochain pull(const simplicial::Cochain& c, const simplicial::ComplexPtr& product, int ny, bool first) {
  std::vector<int> map;
  for (int v = 0; v < product->vertex_count(); ++v) map.push_back(first ? v / ny : v % ny);
  return simplicial::pullback(c, product, map);
}

} // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_corpus <output-dir>\n";
    return 2;
  }
  out_dir = argv[1];
  std::filesystem::create_directories(out_dir);
  const ToleranceConfig cfg;
  const auto z2 = simplicial::Ring::mod(2);

  auto s2 = simplicial::share(simplicial::tetrahedron_boundary());
  auto s1 = simplicial::share(simplicial::circle3());
  auto t2 = simplicial::share(simplicial::torus7());
  auto rp2 = simplicial::share(simplicial::rp2_6());
  auto rp2xs1 = simplicial::share(simplicial::rp2_times_circle());
  write_complex("s1.json", *s1);
  write_complex("s2.json", *s2);
  write_complex("t2.json", *t2);
  write_complex("rp2.json", *rp2);
  write_complex("rp2xs1.json", *rp2xs1);
  write_complex("sigma_rp2.json", simplicial::suspension(*rp2));

  auto h1 = simplicial::cohomology(t2, 1, z2);
  auto cup = invariants::realize_cup_cocycle(h1.generators()[0], h1.generators()[1], 2, cfg);
  write_cocycle("cup_k2.json", cup);
  write_cocycle("exact_t2.json", cech::exact_cocycle(t2, cech::random_vertex_unitaries(*t2, 2, 11), cfg));

  auto a = pull(simplicial::cohomology(rp2, 1, z2).generators()[0], rp2xs1, s1->vertex_count(), true);
  auto b = pull(simplicial::cohomology(s1, 1, z2).generators()[0], rp2xs1, s1->vertex_count(), false);
  write_cocycle("rp2xs1_cup_k2.json", invariants::realize_cup_cocycle(a, b, 2, cfg));

  auto induced = cech::induce_groupoid_cocycle(cup, 2, matalg::random_subalgebra(2, 2, 5).generator(), cfg);
  write("induced_t2.json", {cli::kSchemaVersion, Kind::GroupoidCocycle, cli::from_groupoid(induced)});
  auto skeleton = cech::skeletonize(induced, cfg);
  write("witness_t2.json", {cli::kSchemaVersion, Kind::NatTrans, cli::from_nat_trans(skeleton.witness)});

  write_loop("constant.json", invariants::constant_loop(matalg::haar_unitary(2, 3).matrix(), 8));
  auto gen3 = invariants::generator_loop(3, 16);
  write_loop("generator_k3.json", gen3);
  write_loop("generator_k3_cubed.json", invariants::power(gen3, 3));
  write_loop("random_k2.json", invariants::random_loop({1, 0}, 32, 21));
  write_loop("random_k3.json", invariants::random_loop({2, 0, 0}, 48, 22));
  write_loop("frame_k2_l3.json",
             invariants::embedding_loop(invariants::generator_loop(2, 16), 3, matalg::haar_unitary(6, 4).matrix()));
  return 0;
}
