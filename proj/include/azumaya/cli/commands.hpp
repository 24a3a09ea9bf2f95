#pragma once

#include "azumaya/cli/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#ifndef AZUMAYA_DEFAULT_DEMO_DIR
#define AZUMAYA_DEFAULT_DEMO_DIR "data"
#endif

namespace azumaya::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailed = 1, kInputError = 2 };

struct Options {
  bool json_output = false;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::vector<std::string> complex;
  std::vector<std::string> cocycle;
  std::vector<std::string> loop;
  std::string out;
  int modulus = 0;
  std::vector<std::string> positional;

  ToleranceConfig config() const { return ToleranceConfig(tol, ToleranceConfig{}.retry_limit, seed); }
};

struct Report {
  int code = kSuccess;
  json data = json::object();
  std::vector<std::string> lines;

  void line(std::string s) { lines.push_back(std::move(s)); }
  void fail(std::string why) {
    code = kVerificationFailed;
    data["failure"] = why;
    lines.push_back("FAILED: " + std::move(why));
  }
};

inline std::filesystem::path demo_dir() {
  if (const char* env = std::getenv("AZUMAYA_DEMO_DIR"); env && *env) return env;
  return AZUMAYA_DEFAULT_DEMO_DIR;
}

inline json to_json(const simplicial::ClassCoordinates& c) {
  json f = json::array(), t = json::array();
  for (const auto& x : c.free) f.push_back(simplicial::to_int64(x));
  for (const auto& x : c.torsion) t.push_back(simplicial::to_int64(x));
  return {{"free", f}, {"torsion", t}};
}

inline json group_json(const simplicial::CohomologyGroup& g) {
  json t = json::array();
  for (const auto& d : g.torsion()) t.push_back(simplicial::to_int64(d));
  return {{"degree", g.degree()}, {"ring", g.ring().name()}, {"free_rank", g.free_rank()},
          {"torsion", t}, {"group", g.describe()}};
}

namespace commands {

inline const std::string& single(const std::vector<std::string>& v, const char* flag) {
  if (v.empty()) throw InputError(std::string("missing required option ") + flag);
  if (v.size() > 1) throw InputError(std::string("option ") + flag + " given more than once");
  return v.front();
}

inline simplicial::ComplexPtr load_complex(const std::string& path, const ToleranceConfig& cfg) {
  Dataset d = load(path, cfg);
  return simplicial::share(expect<SimplicialComplex>(d, Kind::Complex, path));
}

inline void brauer_report(Report& r, const invariants::BrauerClass& b,
                          const invariants::BrauerGroups& g) {
  r.data["k"] = b.k;
  r.data["h2_group"] = group_json(g.h2);
  r.data["h3_group"] = group_json(g.h3);
  r.data["h2"] = to_json(b.h2);
  r.data["h3"] = to_json(b.h3);
  r.data["h2_zero"] = b.h2.is_zero();
  r.data["h3_zero"] = b.h3.is_zero();
  r.line("H^2(X;Z/" + std::to_string(b.k) + ") = " + g.h2.describe() + ", class " + simplicial::to_string(b.h2) +
         (b.h2.is_zero() ? " (zero)" : " (nonzero)"));
  r.line("H^3(X;Z) = " + g.h3.describe() + ", Bockstein image " + simplicial::to_string(b.h3) +
         (b.h3.is_zero() ? " (zero)" : " (nonzero)"));
}

inline Report cohomology(const Options& o) {
  const auto cfg = o.config();
  auto x = load_complex(single(o.complex, "--complex"), cfg);
  Report r;
  r.data["vertex_count"] = x->vertex_count();
  r.data["dimension"] = x->dimension();
  r.data["euler_characteristic"] = x->euler_characteristic();
  json groups = json::array();
  std::vector<simplicial::Ring> rings{simplicial::Ring::integers()};
  if (o.modulus >= 2) rings.push_back(simplicial::Ring::mod(o.modulus));
  else if (o.modulus != 0) throw InputError("--modulus must be 0 or at least 2");
  for (const auto& ring : rings)
    for (int q = 0; q <= x->dimension(); ++q) {
      simplicial::CohomologyGroup g(x, q, ring);
      groups.push_back(group_json(g));
      r.line("H^" + std::to_string(q) + "(X;" + ring.name() + ") = " + g.describe());
    }
  r.data["groups"] = groups;
  return r;
}

inline Report verify(const Options& o) {
  const auto cfg = o.config();
  Report r;
  if (!o.loop.empty() && o.cocycle.empty()) {
    Dataset d = load(single(o.loop, "--loop"), cfg);
    const auto& loop = expect<invariants::ClutchingLoop>(d, Kind::Loop, "--loop");
    r.data["kind"] = "loop";
    r.data["pass"] = true;
    r.data["samples"] = loop.size();
    r.line("loop: valid, " + std::to_string(loop.size()) + " samples");
    return r;
  }
  auto x = load_complex(single(o.complex, "--complex"), cfg);
  const std::string& path = single(o.cocycle, "--cocycle");
  Dataset d = load(path, cfg);
  r.data["kind"] = kind_name(d.kind);
  if (d.kind == Kind::PUCocycle) {
    auto c = cli::bind(std::get<PUCocycleData>(d.payload), x, cfg);
    auto rep = cech::verify_pu_cocycle(c, cfg);
    json lambdas = json::array();
    for (std::size_t t = 0; t < rep.exponents.size(); ++t)
    {
      json entry;
      entry["triangle"] = x->simplex(2, t);
      entry["exponent"] = rep.exponents[t];
      entry["lambda"] = json::array({rep.lambdas[t].real(), rep.lambdas[t].imag()});
      lambdas.push_back(std::move(entry));
    }
    r.data["pass"] = rep.pass;
    r.data["worst_residual"] = rep.worst_residual;
    r.data["triangles"] = lambdas;
    r.line("pu-cocycle: " + std::string(rep.pass ? "pass" : "fail") + ", worst residual " +
           std::to_string(rep.worst_residual));
    if (!rep.pass) r.fail("triangle " + simplicial::to_string(*rep.failing_triangle) + " is not a mu_k scalar");
    return r;
  }
  cech::GroupoidReport rep;
  if (d.kind == Kind::GroupoidCocycle) {
    rep = cech::verify_groupoid_cocycle(cli::bind(std::get<GroupoidData>(d.payload), x), cfg);
  } else if (d.kind == Kind::NatTrans) {
    rep = cech::verify_natural_transformation(cli::bind(std::get<NatTransData>(d.payload), x), cfg);
  } else {
    throw InputError(path + ": expected a cocycle or natural transformation, got " + kind_name(d.kind));
  }
  json failures = json::array();
  for (const auto& f : rep.failures) failures.push_back({{"location", f.location}, {"residual", f.residual}});
  r.data["pass"] = rep.pass;
  r.data["worst_residual"] = rep.worst_residual;
  r.data["failures"] = failures;
  r.line(kind_name(d.kind) + ": " + (rep.pass ? "pass" : "fail") + ", worst residual " +
         std::to_string(rep.worst_residual));
  for (const auto& f : rep.failures) r.line("  " + f.location + ": residual " + std::to_string(f.residual));
  if (!rep.pass) r.fail(rep.failures.front().location);
  return r;
}

inline Report brauer(const Options& o) {
  const auto cfg = o.config();
  auto x = load_complex(single(o.complex, "--complex"), cfg);
  const std::string& path = single(o.cocycle, "--cocycle");
  Dataset d = load(path, cfg);
  cech::PUCocycle c;
  if (d.kind == Kind::PUCocycle) {
    c = cli::bind(std::get<PUCocycleData>(d.payload), x, cfg);
  } else if (d.kind == Kind::GroupoidCocycle) {
    c = cech::skeletonize(cli::bind(std::get<GroupoidData>(d.payload), x), cfg).cocycle;
  } else {
    throw InputError(path + ": expected a pu-cocycle or groupoid-cocycle, got " + kind_name(d.kind));
  }
  if (c.k() < 2) throw InputError("brauer: k must be >= 2");
  Report r;
  invariants::BrauerGroups groups(x, c.k());
  brauer_report(r, invariants::brauer_class(c, groups, cfg), groups);
  return r;
}

inline Report loop_class(const Options& o) {
  const auto cfg = o.config();
  Dataset d = load(single(o.loop, "--loop"), cfg);
  const auto& loop = expect<invariants::ClutchingLoop>(d, Kind::Loop, "--loop");
  auto e = invariants::s2_embeddability(loop, cfg);
  Report r;
  r.data["variant"] = loop.variant() == invariants::ClutchingLoop::Variant::Unitary ? "unitary" : "embedding";
  r.data["modulus"] = e.loop_class.modulus;
  r.data["class"] = e.loop_class.value;
  r.data["embeddable"] = e.embeddable;
  r.line("class " + std::to_string(e.loop_class.value) + " in Z/" + std::to_string(e.loop_class.modulus));
  r.line(e.embeddable ? "embeddable into a trivial bundle" : "not embeddable into a trivial bundle");
  return r;
}

inline Report tensor(const Options& o) {
  const auto cfg = o.config();
  if (o.loop.size() != 2) throw InputError("tensor: expects exactly two --loop options");
  Dataset df = load(o.loop[0], cfg);
  Dataset dg = load(o.loop[1], cfg);
  const auto& f = expect<invariants::ClutchingLoop>(df, Kind::Loop, o.loop[0]);
  const auto& g = expect<invariants::ClutchingLoop>(dg, Kind::Loop, o.loop[1]);
  auto h = invariants::tensor_loops(f, g, cfg);
  auto cf = invariants::pu_loop_class(f, cfg);
  auto cg = invariants::pu_loop_class(g, cfg);
  auto ch = invariants::pu_loop_class(h, cfg);
  const std::int64_t k = f.k(), l = g.k();
  auto expected = invariants::make_class(k * l, l * cf.value + k * cg.value);
  Report r;
  r.data["class_f"] = cf.value;
  r.data["class_g"] = cg.value;
  r.data["class_tensor"] = ch.value;
  r.data["modulus"] = k * l;
  r.data["expected"] = expected.value;
  r.line("[f] = " + std::to_string(cf.value) + " in Z/" + std::to_string(k) + ", [g] = " +
         std::to_string(cg.value) + " in Z/" + std::to_string(l));
  r.line("[f x g] = " + std::to_string(ch.value) + " in Z/" + std::to_string(k * l) + ", l[f] + k[g] = " +
         std::to_string(expected.value));
  if (!o.out.empty()) {
    save(Dataset{kSchemaVersion, Kind::Loop, h}, o.out);
    r.line("wrote " + o.out);
  }
  if (!(ch == expected)) r.fail("tensor class does not match l[f] + k[g]");
  return r;
}

inline Report skeletonize(const Options& o) {
  const auto cfg = o.config();
  auto x = load_complex(single(o.complex, "--complex"), cfg);
  const std::string& path = single(o.cocycle, "--cocycle");
  Dataset d = load(path, cfg);
  auto gc = cli::bind(expect<GroupoidData>(d, Kind::GroupoidCocycle, path), x);
  auto in = cech::verify_groupoid_cocycle(gc, cfg);
  if (!in.pass) throw cech::VerificationError("skeletonize: input fails verification at " + in.failures.front().location);
  auto sk = cech::skeletonize(gc, cfg);
  auto pu = cech::verify_pu_cocycle(sk.cocycle, cfg);
  auto nat = cech::verify_natural_transformation(sk.witness, cfg);
  Report r;
  r.data["pu_cocycle_pass"] = pu.pass;
  r.data["witness_pass"] = nat.pass;
  r.data["witness_worst_residual"] = nat.worst_residual;
  r.line("pu-cocycle: " + std::string(pu.pass ? "pass" : "fail"));
  r.line("witness natural transformation: " + std::string(nat.pass ? "pass" : "fail"));
  if (sk.cocycle.k() >= 2 && pu.pass) {
    simplicial::CohomologyGroup h2(x, 2, simplicial::Ring::mod(sk.cocycle.k()));
    auto cls = h2.class_of(cech::scalar_defect(sk.cocycle, cfg));
    r.data["defect_class"] = to_json(cls);
    r.line("scalar defect class in " + h2.describe() + ": " + simplicial::to_string(cls));
  }
  if (!o.out.empty()) {
    save(Dataset{kSchemaVersion, Kind::PUCocycle, from_cocycle(sk.cocycle)}, o.out);
    r.line("wrote " + o.out);
  }
  if (!pu.pass) r.fail("skeleton is not a PU cocycle");
  else if (!nat.pass) r.fail("witness fails at " + nat.failures.front().location);
  return r;
}

struct Demo {
  const char* name;
  const char* summary;
  std::function<Report(const Options&)> run;
};

inline Report demo_brauer(const Options& o, const char* complex, const char* cocycle, bool want_h3) {
  Options sub = o;
  sub.complex = {(demo_dir() / complex).string()};
  sub.cocycle = {(demo_dir() / cocycle).string()};
  Report r = brauer(sub);
  if (r.data["h2_zero"].get<bool>()) r.fail("expected a nonzero H^2 class");
  else if (r.data["h3_zero"].get<bool>() == want_h3) r.fail(want_h3 ? "expected nonzero H^3 torsion" : "expected zero H^3 class");
  return r;
}

inline const std::vector<Demo>& demos() {
  static const std::vector<Demo> list{
      {"serre-rp2xs1", "cup cocycle on RP^2 x S^1, k=2: nonzero H^2 class with nonzero H^3 torsion",
       [](const Options& o) { return demo_brauer(o, "rp2xs1.json", "rp2xs1_cup_k2.json", true); }},
      {"serre-torus", "cup cocycle on the torus, k=2: nonzero H^2 class, H^3 = 0",
       [](const Options& o) { return demo_brauer(o, "t2.json", "cup_k2.json", false); }},
      {"clutching-s2", "clutching loops over S^2: constant, generator, and its k-fold power",
       [](const Options& o) {
         Report r;
         json rows = json::array();
         for (const char* f : {"constant.json", "generator_k3.json", "generator_k3_cubed.json", "frame_k2_l3.json"}) {
           Options sub = o;
           sub.loop = {(demo_dir() / f).string()};
           Report one = loop_class(sub);
           rows.push_back({{"loop", f}, {"class", one.data["class"]}, {"modulus", one.data["modulus"]},
                           {"embeddable", one.data["embeddable"]}});
           r.line(std::string(f) + ": class " + std::to_string(one.data["class"].get<int>()) + " in Z/" +
                  std::to_string(one.data["modulus"].get<int>()));
         }
         r.data["loops"] = rows;
         if (rows[0]["class"] != 0 || rows[1]["class"] == 0 || rows[2]["class"] != 0 || rows[3]["class"] == 0)
           r.fail("loop classes differ from the expected pattern 0, nonzero, 0, nonzero");
         return r;
       }},
  };
  return list;
}

inline Report demo(const Options& o) {
  if (o.positional.empty()) {
    Report r;
    json names = json::array();
    for (const auto& d : demos()) {
      names.push_back({{"name", d.name}, {"summary", d.summary}});
      r.line(std::string(d.name) + "  " + d.summary);
    }
    r.data["demos"] = names;
    return r;
  }
  for (const auto& d : demos())
    if (o.positional.front() == d.name) {
      Report r = d.run(o);
      r.data["demo"] = d.name;
      return r;
    }
  throw InputError("unknown demo '" + o.positional.front() + "'");
}

} // namespace commands

inline const std::map<std::string, std::function<Report(const Options&)>>& command_table() {
  static const std::map<std::string, std::function<Report(const Options&)>> table{
      {"cohomology", commands::cohomology}, {"verify", commands::verify},
      {"brauer", commands::brauer},         {"loop-class", commands::loop_class},
      {"tensor", commands::tensor},         {"skeletonize", commands::skeletonize},
      {"demo", commands::demo},
  };
  return table;
}

inline std::string usage() {
  return "usage: azumaya <command> [options]\n"
         "commands:\n"
         "  cohomology  --complex F [--modulus K]\n"
         "  verify      --complex F --cocycle F | --loop F\n"
         "  brauer      --complex F --cocycle F\n"
         "  loop-class  --loop F\n"
         "  tensor      --loop F --loop G [--out F]\n"
         "  skeletonize --complex F --cocycle F [--out F]\n"
         "  demo        [name]\n"
         "global options: --json  --tol <float>  --seed <u64>\n"
         "exit codes: 0 success, 1 verification failure, 2 input error\n";
}

/// Runs one command. `args` excludes the program name.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"azumaya", "azumaya"};
  app.set_help_flag();
  app.add_flag("--json", o.json_output);
  app.add_option("--tol", o.tol);
  app.add_option("--seed", o.seed);
  app.add_option("--complex", o.complex);
  app.add_option("--cocycle", o.cocycle);
  app.add_option("--loop", o.loop);
  app.add_option("--out", o.out);
  app.add_option("--modulus", o.modulus);
  app.add_option("args", o.positional);

  if (args.empty() || args.front() == "--help" || args.front() == "-h") {
    (args.empty() ? err : out) << usage();
    return args.empty() ? kInputError : kSuccess;
  }
  const std::string& command = args.front();
  auto it = command_table().find(command);
  if (it == command_table().end()) {
    err << "unknown command '" << command << "'\n" << usage();
    return kInputError;
  }
  std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    err << command << ": " << e.what() << "\n" << usage();
    return kInputError;
  }

  Report r;
  try {
    o.config().validate();
    r = it->second(o);
  } catch (const InputError& e) {
    r = Report{kInputError, {{"error", e.what()}}, {std::string("input error: ") + e.what()}};
  } catch (const NumericalError& e) {
    r = Report{kVerificationFailed, {{"error", e.what()}}, {std::string("failure: ") + e.what()}};
  }
  r.data["command"] = command;
  r.data["exit_code"] = r.code;
  if (o.json_output) {
    out << r.data.dump(2) << '\n';
  } else {
    std::ostream& dst = r.code == kInputError ? err : out;
    for (const auto& l : r.lines) dst << l << '\n';
  }
  return r.code;
}

} // namespace azumaya::cli
