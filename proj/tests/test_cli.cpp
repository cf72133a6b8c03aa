#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "h3geom/cli.hpp"
#include "h3geom/io.hpp"
#include "json.hpp"

using namespace h3;
namespace fs = std::filesystem;

namespace {

// Scratch directory, removed on scope exit.
struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("h3geom_test_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

struct Result {
  int code;
  std::string out, err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "h3geom");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<Vec3d> obj_vertices(const std::string& text) {
  std::vector<Vec3d> vs;
  std::istringstream is(text);
  std::string tag;
  for (std::string line; std::getline(is, line);) {
    if (line.rfind("v ", 0) != 0) continue;
    std::istringstream ls(line);
    Vec3d p;
    ls >> tag >> p.x() >> p.y() >> p.z();
    vs.push_back(p);
  }
  return vs;
}

}  // namespace

TEST_CASE("format_double") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(-4.0) == "-4");
  CHECK(format_double(NAN) == "nan");
  CHECK(format_double(-INFINITY) == "-inf");
  const double x = 1.0 / 3.0;
  CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("config parsing") {
  SUBCASE("single family with defaults") {
    const RunConfig rc = parse_config(R"({"family": "helix", "tau": 0.5})");
    REQUIRE(rc.families.size() == 1u);
    const FamilyDescriptor& f = rc.families[0];
    CHECK(f.kind == FamilyDescriptor::Kind::helix);
    CHECK(f.delta == 1);
    CHECK(f.causal == Causal::spacelike);
    CHECK(f.helix.theta == doctest::Approx(std::asinh(1.0)));
    CHECK(f.domain.v1 == 2.0);
    CHECK(rc.seed == kDefaultSeed);
    CHECK(rc.suites == std::vector<std::string>{"all"});
  }
  SUBCASE("explicit fields") {
    const RunConfig rc = parse_config(R"({
      "family": "helix", "causal": "timelike", "tau": 1, "theta": 0.6, "c": 0.2,
      "eta": {"kind": "sinusoidal", "coefficients": [0.3, 1]},
      "domain": {"u": [-0.5, 0.5], "v": [0, 1]}, "grid": {"nu": 9, "nv": 11},
      "suites": ["gauss", "codazzi"], "seed": 5, "out": "x", "tolerances": {"gauss": 1e-6}})");
    const FamilyDescriptor& f = rc.families[0];
    CHECK(f.helix.theta == 0.6);
    CHECK(f.helix.c == 0.2);
    CHECK(f.helix.eta.kind == EtaSpec::Kind::sinusoidal);
    CHECK(f.domain.u0 == -0.5);
    CHECK(rc.grid.nu == 9);
    CHECK(rc.grid.nv == 11);
    CHECK(rc.suites.size() == 2u);
    CHECK(rc.seed == 5u);
    CHECK(rc.out == "x");
    CHECK(rc.tolerances.at("gauss") == 1e-6);
  }
  SUBCASE("matrix and families array") {
    CHECK(parse_config(R"({"family": "matrix"})").families.size() == family_matrix().size());
    const RunConfig rc = parse_config(R"({"families": [{"family": "minimal_plane", "phi0": 0.4},
                                                       {"family": "cmc_cylinder", "delta": 1, "causal": "spacelike"}]})");
    REQUIRE(rc.families.size() == 2u);
    CHECK(rc.families[1].kind == FamilyDescriptor::Kind::cmc_cylinder);
    CHECK(output_stem(1, 2) == "family_01_");
    CHECK(output_stem(0, 1).empty());
  }
  SUBCASE("rejections") {
    const char* bad[] = {
        "{not json",
        "[1, 2]",
        R"({"family": "minimal_plane", "grid": {"nu": 4, "nv": 4}})",
        R"({"family": "minimal_plane", "grid": {"nu": 8}})",
        R"({"family": "sphere"})",
        R"({"family": "helix", "delta": 2})",
        R"({"family": "helix", "tua": 1})",
        R"({"family": "helix", "tau": "one"})",
        R"({"family": "helix", "domain": {"u": [1, -1]}})",
        R"({"family": "helix", "eta": {"kind": "constant", "coefficients": [1, 2]}})",
        R"({"family": "helix", "suites": ["nope"]})",
        R"({"family": "helix", "tolerances": {"nope": 1}})",
        R"({"family": "helix", "seed": -3})",
        R"({"family": "matrix", "tau": 2})",
        R"({"families": []})",
    };
    for (const char* doc : bad) {
      CAPTURE(doc);
      CHECK_THROWS_AS(parse_config(doc), GeometryError);
    }
  }
}

TEST_CASE("analyze") {
  TempDir dir("analyze");
  SUBCASE("minimal plane: H range within 1e-8") {
    spit(dir / "c.json", R"({"family": "minimal_plane", "phi0": 0.3, "grid": {"nu": 12, "nv": 10}})");
    const Result r = cli({"analyze", "--config", dir / "c.json", "--out", dir / "o"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "o/summary.json"));
    CHECK(j["H"]["range"].get<double>() <= 1e-8);
    CHECK(j["epsilon"] == 1);
    CHECK(j["samples"] == 120);
    const std::string csv = slurp(dir / "o/report.csv");
    CHECK(csv.rfind("u,v,nu,H,K_ext,K_int,eps,S11,S12,S21,S22\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 121);
  }
  SUBCASE("spacelike helix theta=asinh(1), tau=1: K mean = -4") {
    spit(dir / "c.json", R"({"family": "helix", "causal": "spacelike", "tau": 1, "grid": {"nu": 16, "nv": 16}})");
    REQUIRE(cli({"analyze", "--config", dir / "c.json", "--out", dir / "o"}).code == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "o/summary.json"));
    CHECK(std::abs(j["K_ext"]["mean"].get<double>() + 4) <= 1e-6);
    CHECK(std::abs(j["K_int"]["mean"].get<double>() + 4) <= 1e-6);
    CHECK(j["basis"] == "adapted");
  }
  SUBCASE("grid 4x4 is a config error") {
    spit(dir / "c.json", R"({"family": "minimal_plane", "grid": {"nu": 4, "nv": 4}})");
    const Result r = cli({"analyze", "--config", dir / "c.json", "--out", dir / "o"});
    CHECK(r.code == kExitConfig);
    CHECK(r.err.find("8x8") != std::string::npos);
  }
  SUBCASE("missing config file") {
    CHECK(cli({"analyze", "--config", dir / "none.json"}).code == kExitConfig);
  }
  SUBCASE("geometry errors name the sample") {
    spit(dir / "c.json", R"({"family": "helix", "causal": "timelike", "domain": {"u": [-40, 40], "v": [0, 2]},
                             "grid": {"nu": 8, "nv": 8}})");
    const Result r = cli({"analyze", "--config", dir / "c.json", "--out", dir / "o"});
    CHECK(r.code == kExitGeometry);
    CHECK(r.err.find("sample (0,") != std::string::npos);
  }
  SUBCASE("quadrature failure is a geometry error") {
    spit(dir / "c.json", R"({"family": "helix", "eta": {"kind": "polynomial", "coefficients": [0,0,0,0,0,0,400]}})");
    CHECK(cli({"analyze", "--config", dir / "c.json", "--out", dir / "o"}).code == kExitGeometry);
  }
}

TEST_CASE("verify") {
  TempDir dir("verify");
  SUBCASE("ambient suite on delta=1, tau=1") {
    spit(dir / "c.json", R"({"family": "helix", "tau": 1})");
    const Result r = cli({"verify", "--config", dir / "c.json", "--suite", "ambient", "--out", dir / "o"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "o/suite.json"));
    CHECK(j["verdict"] == "pass");
    CHECK(j["seed"] == kDefaultSeed);
    CHECK(j["suite"] == "ambient");
    for (const auto& c : j["checks"]) CHECK(c["verdict"] == "pass");
  }
  SUBCASE("full family matrix") {
    spit(dir / "c.json", R"({"family": "matrix", "grid": {"nu": 12, "nv": 12}})");
    const Result r = cli({"verify", "--config", dir / "c.json", "--out", dir / "o"});
    CHECK(r.code == 0);
    CHECK(fs::exists(dir / "o/family_23_suite.json"));
  }
  SUBCASE("unknown suite") {
    spit(dir / "c.json", R"({"family": "helix"})");
    CHECK(cli({"verify", "--config", dir / "c.json", "--suite", "nope"}).code == kExitConfig);
  }
  SUBCASE("a zero tolerance fails the suite") {
    spit(dir / "c.json", R"({"family": "helix", "grid": {"nu": 10, "nv": 10}})");
    const Result r =
        cli({"verify", "--config", dir / "c.json", "--suite", "gauss", "--tol", "gauss=0", "--out", dir / "o"});
    CHECK(r.code == kExitSuiteFail);
    const auto j = nlohmann::json::parse(slurp(dir / "o/suite.json"));
    CHECK(j["verdict"] == "fail");
  }
  SUBCASE("bad --tol") {
    spit(dir / "c.json", R"({"family": "helix"})");
    CHECK(cli({"verify", "--config", dir / "c.json", "--tol", "gauss"}).code == kExitConfig);
    CHECK(cli({"verify", "--config", dir / "c.json", "--tol", "bogus=1"}).code == kExitConfig);
  }
  SUBCASE("--seed is reported") {
    spit(dir / "c.json", R"({"family": "minimal_plane"})");
    REQUIRE(cli({"verify", "--config", dir / "c.json", "--suite", "ambient", "--seed", "99", "--out", dir / "o"}).code == 0);
    CHECK(nlohmann::json::parse(slurp(dir / "o/suite.json"))["seed"] == 99);
  }
  SUBCASE("usage errors") {
    CHECK(cli({}).code == kExitConfig);
    CHECK(cli({"frobnicate"}).code == kExitConfig);
    CHECK(cli({"verify"}).code == kExitConfig);
    CHECK(cli({"--help"}).code == 0);
  }
}

TEST_CASE("mesh") {
  TempDir dir("mesh");
  SUBCASE("CMC cylinder delta=-1 lies on x^2 + y^2 = 1") {
    spit(dir / "c.json", R"({"family": "cmc_cylinder", "delta": -1, "grid": {"nu": 9, "nv": 13}})");
    REQUIRE(cli({"mesh", "--config", dir / "c.json", "--out", dir / "o"}).code == 0);
    const std::string obj = slurp(dir / "o/mesh.obj");
    const auto vs = obj_vertices(obj);
    CHECK(vs.size() == 9u * 13u);
    for (const Vec3d& p : vs) CHECK(std::abs(p.x() * p.x() + p.y() * p.y() - 1) <= 1e-9);
    CHECK(obj.find("not Euclidean") != std::string::npos);
    CHECK(obj.find("# epsilon 1") != std::string::npos);
    // two triangles per quad
    std::size_t faces = 0;
    std::istringstream is(obj);
    for (std::string line; std::getline(is, line);) faces += line.rfind("f ", 0) == 0;
    CHECK(faces == 2u * 8u * 12u);
  }
  SUBCASE("minimal plane delta=-1 lies on sin(phi0) y + cos(phi0) x = 0") {
    const double phi0 = 0.8;
    spit(dir / "c.json", R"({"family": "minimal_plane", "delta": -1, "phi0": 0.8, "grid": {"nu": 10, "nv": 10}})");
    REQUIRE(cli({"mesh", "--config", dir / "c.json", "--out", dir / "o"}).code == 0);
    const auto vs = obj_vertices(slurp(dir / "o/mesh.obj"));
    CHECK(vs.size() == 100u);
    for (const Vec3d& p : vs) CHECK(std::abs(std::sin(phi0) * p.y() + std::cos(phi0) * p.x()) <= 1e-12);
  }
  SUBCASE("unwritable output is an IO error") {
    spit(dir / "c.json", R"({"family": "minimal_plane"})");
    spit(dir / "file", "");
    CHECK(cli({"mesh", "--config", dir / "c.json", "--out", dir / "file/sub"}).code == kExitIO);
  }
}

TEST_CASE("outputs are byte-identical across runs") {
  TempDir dir("determinism");
  spit(dir / "c.json", R"({"families": [{"family": "helix", "causal": "timelike", "tau": 0.5,
                                         "eta": {"kind": "sinusoidal", "coefficients": [0.3, 1]}},
                                        {"family": "cmc_cylinder", "delta": 1, "causal": "spacelike"}],
                           "grid": {"nu": 10, "nv": 10}, "seed": 3})");
  for (const char* run_dir : {"a", "b"}) {
    for (const char* cmd : {"analyze", "verify", "mesh"}) {
      REQUIRE(cli({cmd, "--config", dir / "c.json", "--out", dir / run_dir}).code == 0);
    }
  }
  int files = 0;
  for (const auto& e : fs::directory_iterator(dir.path / "a")) {
    const std::string name = e.path().filename().string();
    CAPTURE(name);
    CHECK(slurp(e.path().string()) == slurp(dir / ("b/" + name)));
    ++files;
  }
  CHECK(files == 2 * 4);
}
