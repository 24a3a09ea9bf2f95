#include "support.hpp"

#include "azumaya/cli/commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace azumaya;
using cli::json;
namespace fs = std::filesystem;

namespace {

const ToleranceConfig cfg;

std::string data(const std::string& name) { return (fs::path(AZUMAYA_TEST_DATA_DIR) / name).string(); }

struct Run {
  int code;
  std::string out, err;
  json parsed() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  return json::parse(in);
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "azumaya_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

} // namespace

TEST(Corpus, EveryFileLoadsAndRoundTrips) {
  int files = 0;
  for (const auto& entry : fs::directory_iterator(AZUMAYA_TEST_DATA_DIR)) {
    if (entry.path().extension() != ".json") continue;
    ++files;
    SCOPED_TRACE(entry.path().filename().string());
    auto d = cli::load(entry.path().string(), cfg);
    json once = cli::serialize(d);
    json twice = cli::serialize(cli::parse_dataset(once, cfg));
    EXPECT_EQ(once.dump(), twice.dump());
    EXPECT_EQ(once, read_json(entry.path().string()));
  }
  EXPECT_GE(files, 15);
}

TEST(Corpus, BundledCocyclesVerify) {
  for (auto [cx, cc] : std::vector<std::pair<const char*, const char*>>{
           {"t2.json", "cup_k2.json"}, {"t2.json", "exact_t2.json"}, {"rp2xs1.json", "rp2xs1_cup_k2.json"}}) {
    auto r = run({"verify", "--complex", data(cx), "--cocycle", data(cc)});
    EXPECT_EQ(r.code, 0) << cc << r.err;
  }
  EXPECT_EQ(run({"verify", "--complex", data("t2.json"), "--cocycle", data("induced_t2.json")}).code, 0);
  EXPECT_EQ(run({"verify", "--complex", data("t2.json"), "--cocycle", data("witness_t2.json")}).code, 0);
}

TEST(Io, MissingFaceIsNamed) {
  json j = {{"schema", cli::kSchemaVersion},
            {"kind", "complex"},
            {"payload", {{"vertex_count", 3}, {"simplices", {{0}, {1}, {2}, {0, 1}, {1, 2}, {0, 1, 2}}}}}};
  try {
    cli::parse_dataset(j, cfg);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("[0,2]"), std::string::npos) << e.what();
  }
}

TEST(Io, NonUnitaryEdgeReportsResidual) {
  json j = read_json(data("cup_k2.json"));
  j["payload"]["edges"][3]["matrix"][0][0] = {2.0, 0.0};
  try {
    cli::parse_dataset(j, cfg);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("$.payload.edges[3]"), std::string::npos) << msg;
    EXPECT_NE(msg.find("residual"), std::string::npos) << msg;
  }
}

TEST(Io, SchemaAndKindAreChecked) {
  json j = read_json(data("s2.json"));
  j["schema"] = "azumaya/0";
  EXPECT_THROW(cli::parse_dataset(j, cfg), InputError);
  j = read_json(data("s2.json"));
  j["kind"] = "sheaf";
  EXPECT_THROW(cli::parse_dataset(j, cfg), InputError);
}

TEST(Io, BindRejectsMissingEdges) {
  json j = read_json(data("cup_k2.json"));
  j["payload"]["edges"].erase(0);
  auto d = cli::parse_dataset(j, cfg);
  auto x = simplicial::share(simplicial::torus7());
  EXPECT_THROW(cli::bind(std::get<cli::PUCocycleData>(d.payload), x, cfg), InputError);
}

TEST(Dispatch, UnknownCommandAndMissingArguments) {
  auto r = run({"frobnicate"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("usage"), std::string::npos);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"brauer", "--complex", data("t2.json")}).code, 2);
  EXPECT_EQ(run({"loop-class", "--loop", data("does_not_exist.json")}).code, 2);
  EXPECT_EQ(run({"cohomology", "--complex", data("t2.json"), "--tol", "-1"}).code, 2);
  EXPECT_EQ(run({"cohomology", "--bogus"}).code, 2);
}

TEST(Dispatch, Cohomology) {
  auto r = run({"cohomology", "--complex", data("rp2.json"), "--modulus", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("H^2(X;Z) = Z/2"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("H^1(X;Z/2) = Z/2"), std::string::npos) << r.out;
}

TEST(Dispatch, BrauerOnTorusCup) {
  auto r = run({"brauer", "--json", "--complex", data("t2.json"), "--cocycle", data("cup_k2.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.parsed();
  EXPECT_FALSE(j["h2_zero"].get<bool>());
  EXPECT_TRUE(j["h3_zero"].get<bool>());
}

TEST(Dispatch, BrauerAcceptsGroupoidCocycle) {
  auto r = run({"brauer", "--json", "--complex", data("t2.json"), "--cocycle", data("induced_t2.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_FALSE(r.parsed()["h2_zero"].get<bool>());
}

TEST(Dispatch, LoopClass) {
  auto r = run({"loop-class", "--json", "--loop", data("constant.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.parsed()["class"], 0);
  EXPECT_TRUE(r.parsed()["embeddable"].get<bool>());
  auto g = run({"loop-class", "--json", "--loop", data("generator_k3.json")}).parsed();
  EXPECT_EQ(g["class"], 2);
  EXPECT_FALSE(g["embeddable"].get<bool>());
}

TEST(Dispatch, TensorWritesLoop) {
  auto out = scratch("tensor.json");
  auto r = run({"tensor", "--json", "--loop", data("random_k2.json"), "--loop", data("random_k3.json"), "--out",
                out.string()});
  ASSERT_EQ(r.code, 0) << r.err << r.out;
  auto d = cli::load(out.string(), cfg);
  EXPECT_EQ(d.kind, cli::Kind::Loop);
  auto c = run({"loop-class", "--json", "--loop", out.string()}).parsed();
  EXPECT_EQ(c["modulus"], 6);
}

TEST(Dispatch, SkeletonizeWritesPuCocycle) {
  auto out = scratch("skeleton.json");
  auto r = run({"skeletonize", "--complex", data("t2.json"), "--cocycle", data("induced_t2.json"), "--out",
                out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto b = run({"brauer", "--json", "--complex", data("t2.json"), "--cocycle", out.string()});
  ASSERT_EQ(b.code, 0) << b.err;
  auto ref = run({"brauer", "--json", "--complex", data("t2.json"), "--cocycle", data("induced_t2.json")});
  EXPECT_EQ(b.parsed()["h2"], ref.parsed()["h2"]);
}

TEST(Dispatch, VerificationFailureExitsOne) {
  auto x = simplicial::share(simplicial::torus7());
  auto d = cli::load(data("induced_t2.json"), cfg);
  auto g = cli::bind(std::get<cli::GroupoidData>(d.payload), x);
  g.edge_values[0] = g.edge_values[0].precomposed(matalg::haar_unitary(2, 5).matrix());
  auto p = scratch("broken_groupoid.json");
  cli::save({cli::kSchemaVersion, cli::Kind::GroupoidCocycle, cli::from_groupoid(g)}, p.string());
  auto r = run({"verify", "--json", "--complex", data("t2.json"), "--cocycle", p.string()});
  EXPECT_EQ(r.code, 1) << r.err << r.out;
  EXPECT_FALSE(r.parsed()["pass"].get<bool>());
}

TEST(Dispatch, DemosPass) {
  for (const char* name : {"serre-rp2xs1", "serre-torus", "clutching-s2"}) {
    auto r = run({"demo", name});
    EXPECT_EQ(r.code, 0) << name << "\n" << r.out << r.err;
  }
  auto list = run({"demo", "--json"});
  EXPECT_EQ(list.code, 0);
  EXPECT_EQ(list.parsed()["demos"].size(), 3u);
  EXPECT_EQ(run({"demo", "nope"}).code, 2);
}

TEST(Dispatch, DemoDirOverride) {
  auto dir = scratch("empty_demo_dir").parent_path() / "empty_demo";
  fs::create_directories(dir);
  ::setenv("AZUMAYA_DEMO_DIR", dir.c_str(), 1);
  auto r = run({"demo", "serre-torus"});
  ::unsetenv("AZUMAYA_DEMO_DIR");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("empty_demo"), std::string::npos) << r.err;
}

TEST(Binary, ExitCodesFromProcess) {
  const std::string cli = AZUMAYA_CLI_PATH;
  auto status = [&](const std::string& args) {
    int s = std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(s);
  };
  EXPECT_EQ(status("loop-class --loop " + data("constant.json")), 0);
  EXPECT_EQ(status("frobnicate"), 2);
  EXPECT_EQ(status("demo serre-rp2xs1"), 0);
}
