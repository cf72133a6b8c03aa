#include "h3geom/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "h3geom/errors.hpp"
#include "h3geom/io.hpp"
#include "json.hpp"

namespace h3 {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw GeometryError(ErrorKind::InvalidParams, what); }

struct IOFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double number(const json& j, const char* key) {
  if (!j.is_number()) bad(std::string(key) + " must be a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) bad(std::string(key) + " must be finite");
  return x;
}

int integer(const json& j, const char* key) {
  if (!j.is_number_integer()) bad(std::string(key) + " must be an integer");
  return j.get<int>();
}

std::string text(const json& j, const char* key) {
  if (!j.is_string()) bad(std::string(key) + " must be a string");
  return j.get<std::string>();
}

void interval(const json& j, const char* key, double& a, double& b) {
  if (!j.is_array() || j.size() != 2) bad(std::string("domain.") + key + " must be [a, b]");
  a = number(j[0], key);
  b = number(j[1], key);
  if (!(a < b)) bad(std::string("domain.") + key + " must satisfy a < b");
}

const std::set<std::string> kFamilyKeys = {"family", "delta", "causal", "tau", "phi0", "theta", "c", "eta", "domain"};
const std::set<std::string> kRunKeys = {"families", "grid", "suites", "seed", "out", "tolerances"};

FamilyDescriptor parse_family(const json& j) {
  if (!j.is_object()) bad("family entry must be an object");
  for (const auto& [k, v] : j.items()) {
    (void)v;
    if (!kFamilyKeys.count(k) && !kRunKeys.count(k)) bad("unknown config key '" + k + "'");
  }
  if (!j.contains("family")) bad("missing 'family'");
  FamilyDescriptor f;
  f.kind = family_kind_from_string(text(j["family"], "family"));
  using Kind = FamilyDescriptor::Kind;
  f.delta = f.kind == Kind::helix ? 1 : -1;
  f.causal = f.kind == Kind::helix ? Causal::spacelike : Causal::timelike;
  if (j.contains("delta")) {
    f.delta = integer(j["delta"], "delta");
    if (f.delta != 1 && f.delta != -1) bad("delta must be 1 or -1");
  }
  if (j.contains("causal")) f.causal = causal_from_string(text(j["causal"], "causal"));
  if (j.contains("tau")) f.tau = number(j["tau"], "tau");
  if (j.contains("phi0")) f.phi0 = number(j["phi0"], "phi0");
  f.helix.theta = f.causal == Causal::spacelike ? std::asinh(1.0) : M_PI / 4;
  if (j.contains("theta")) f.helix.theta = number(j["theta"], "theta");
  if (j.contains("c")) f.helix.c = number(j["c"], "c");
  if (j.contains("eta")) {
    const json& e = j["eta"];
    if (!e.is_object()) bad("eta must be an object {kind, coefficients}");
    for (const auto& [k, v] : e.items()) {
      (void)v;
      if (k != "kind" && k != "coefficients") bad("unknown eta key '" + k + "'");
    }
    if (e.contains("kind")) f.helix.eta.kind = eta_kind_from_string(text(e["kind"], "eta.kind"));
    if (e.contains("coefficients")) {
      if (!e["coefficients"].is_array()) bad("eta.coefficients must be an array");
      f.helix.eta.coefficients.clear();
      for (const json& c : e["coefficients"]) f.helix.eta.coefficients.push_back(number(c, "eta.coefficients"));
    }
    f.helix.eta.validate();
  }
  f.domain = default_domain(f.kind);
  if (j.contains("domain")) {
    const json& d = j["domain"];
    if (!d.is_object()) bad("domain must be {u: [a, b], v: [a, b]}");
    for (const auto& [k, v] : d.items()) {
      (void)v;
      if (k != "u" && k != "v") bad("unknown domain key '" + k + "'");
    }
    if (d.contains("u")) interval(d["u"], "u", f.domain.u0, f.domain.u1);
    if (d.contains("v")) interval(d["v"], "v", f.domain.v0, f.domain.v1);
  }
  return f;
}

void parse_run(const json& j, RunConfig& rc) {
  if (j.contains("grid")) {
    const json& g = j["grid"];
    if (!g.is_object() || !g.contains("nu") || !g.contains("nv")) bad("grid must be {nu, nv}");
    rc.grid.nu = integer(g["nu"], "grid.nu");
    rc.grid.nv = integer(g["nv"], "grid.nv");
  }
  if (j.contains("suites")) {
    if (!j["suites"].is_array()) bad("suites must be an array of names");
    rc.suites.clear();
    for (const json& s : j["suites"]) rc.suites.push_back(text(s, "suites"));
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) bad("seed must be a non-negative integer");
    rc.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("out")) rc.out = text(j["out"], "out");
  if (j.contains("tolerances")) {
    if (!j["tolerances"].is_object()) bad("tolerances must be an object");
    for (const auto& [k, v] : j["tolerances"].items()) rc.tolerances[k] = number(v, "tolerances");
  }
}

void validate(const RunConfig& rc) {
  if (rc.families.empty()) bad("no families configured");
  if (rc.grid.nu < 8 || rc.grid.nv < 8) {
    bad("grid must be at least 8x8, got " + std::to_string(rc.grid.nu) + "x" + std::to_string(rc.grid.nv));
  }
  if (rc.suites.empty()) bad("suite list is empty");
  for (const std::string& s : rc.suites) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), s) == names.end()) bad("unknown suite '" + s + "'");
  }
  Tolerances tol;
  for (const auto& [k, v] : rc.tolerances) tol.set(k, v);
}

std::filesystem::path output_path(const RunConfig& rc, std::size_t k, const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(rc.out, ec);
  if (ec) throw IOFailure("cannot create output directory '" + rc.out + "': " + ec.message());
  return std::filesystem::path(rc.out) / (output_stem(k, rc.families.size()) + name);
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IOFailure("cannot open '" + path.string() + "' for writing");
  body(os);
  os.flush();
  if (!os) throw IOFailure("write to '" + path.string() + "' failed");
}

VerifyOptions verify_options(const RunConfig& rc) {
  VerifyOptions opt;
  opt.grid = rc.grid;
  opt.seed = rc.seed;
  for (const auto& [k, v] : rc.tolerances) opt.tol.set(k, v);
  return opt;
}

int cmd_analyze(const RunConfig& rc, std::ostream& out) {
  for (std::size_t k = 0; k < rc.families.size(); ++k) {
    const FamilyDescriptor& f = rc.families[k];
    const GeometryReport rep = analyze(build_family(f), rc.grid);
    const auto csv = output_path(rc, k, "report.csv");
    const auto sum = output_path(rc, k, "summary.json");
    write_file(csv, [&](std::ostream& os) { write_report_csv(os, rep); });
    write_file(sum, [&](std::ostream& os) { os << report_summary_json(rep, f); });
    out << f.name() << ": eps=" << rep.summary.eps << " nu=" << format_double(rep.summary.nu.mean)
        << " H=" << format_double(rep.summary.H.mean) << " K=" << format_double(rep.summary.K_ext.mean) << " -> "
        << csv.string() << ", " << sum.string() << '\n';
  }
  return kExitPass;
}

int cmd_verify(const RunConfig& rc, std::ostream& out) {
  const VerifyOptions opt = verify_options(rc);
  bool all_pass = true;
  for (std::size_t k = 0; k < rc.families.size(); ++k) {
    const FamilyDescriptor& f = rc.families[k];
    const ResidualSuite suite = run_suites(f, rc.suites, opt);
    const auto path = output_path(rc, k, "suite.json");
    write_file(path, [&](std::ostream& os) { os << suite_json(suite); });
    for (const Check& c : suite.checks) {
      if (!c.pass()) {
        out << "  FAIL " << c.id << " residual=" << format_double(c.max_residual) << " tol=" << format_double(c.tol)
            << '\n';
      }
    }
    out << (suite.pass() ? "PASS " : "FAIL ") << f.name() << " (" << suite.checks.size() << " checks) -> "
        << path.string() << '\n';
    all_pass = all_pass && suite.pass();
  }
  out << "seed " << rc.seed << '\n';
  return all_pass ? kExitPass : kExitSuiteFail;
}

int cmd_mesh(const RunConfig& rc, std::ostream& out) {
  for (std::size_t k = 0; k < rc.families.size(); ++k) {
    const FamilyDescriptor& f = rc.families[k];
    const SurfacePatch patch = build_family(f);
    const GeometryReport rep = analyze(patch, rc.grid);
    const auto path = output_path(rc, k, "mesh.obj");
    write_file(path, [&](std::ostream& os) { write_obj(os, patch, rc.grid, f, rep.summary); });
    out << f.name() << ": " << rc.grid.nu * rc.grid.nv << " vertices -> " << path.string() << '\n';
  }
  return kExitPass;
}

}  // namespace

Domain default_domain(FamilyDescriptor::Kind kind) {
  switch (kind) {
    case FamilyDescriptor::Kind::helix: return {-1, 1, 0, 2};
    case FamilyDescriptor::Kind::cmc_cylinder: return {-1, 1, -1.5, 1.5};
    case FamilyDescriptor::Kind::minimal_plane: break;
  }
  return {-1, 1, -1, 1};
}

std::string output_stem(std::size_t k, std::size_t n) {
  if (n == 1) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "family_%02zu_", k);
  return buf;
}

RunConfig parse_config(const std::string& doc) {
  json j;
  try {
    j = json::parse(doc);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) bad("config must be a JSON object");

  RunConfig rc;
  try {
    parse_run(j, rc);
    if (j.contains("families")) {
      if (!j["families"].is_array()) bad("families must be an array");
      for (const auto& [k, v] : j.items()) {
        (void)v;
        if (!kRunKeys.count(k)) bad("key '" + k + "' belongs inside a families entry");
      }
      for (const json& e : j["families"]) rc.families.push_back(parse_family(e));
    } else if (j.contains("family") && j["family"] == "matrix") {
      for (const auto& [k, v] : j.items()) {
        (void)v;
        if (k != "family" && !kRunKeys.count(k)) bad("key '" + k + "' is not used with family \"matrix\"");
      }
      rc.families = family_matrix();
    } else {
      rc.families.push_back(parse_family(j));
    }
  } catch (const json::exception& e) {
    bad(std::string("bad config value: ") + e.what());
  }
  validate(rc);
  return rc;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) bad("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Surface geometry in the Lorentzian Heisenberg group", "h3geom"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  std::vector<std::string> tols, suites;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config")->required();
    sub->add_option("--seed", seed, "seed for random point draws");
    sub->add_option("--tol", tols, "tolerance override NAME=VALUE")->allow_extra_args(false);
    sub->add_option("--out", out_dir, "output directory");
  };
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "per-sample report (CSV) and summary (JSON)");
  CLI::App* verify_cmd = app.add_subcommand("verify", "residual suites (JSON), exit 1 on failure");
  CLI::App* mesh_cmd = app.add_subcommand("mesh", "OBJ mesh of the chart coordinates");
  for (CLI::App* sub : {analyze_cmd, verify_cmd, mesh_cmd}) add_common(sub);
  verify_cmd->add_option("--suite", suites, "suite name (repeatable)")->allow_extra_args(false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    RunConfig rc = load_config(config_path);
    CLI::App* sub = app.get_subcommands().front();
    if (sub->count("--seed")) rc.seed = seed;
    if (sub->count("--out")) rc.out = out_dir;
    if (!suites.empty()) rc.suites = suites;
    for (const std::string& t : tols) {
      const auto eq = t.find('=');
      if (eq == std::string::npos || eq == 0) bad("--tol expects NAME=VALUE, got '" + t + "'");
      double value = 0;
      try {
        std::size_t used = 0;
        value = std::stod(t.substr(eq + 1), &used);
        if (used != t.size() - eq - 1) throw std::invalid_argument(t);
      } catch (const std::exception&) {
        bad("--tol value is not a number in '" + t + "'");
      }
      rc.tolerances[t.substr(0, eq)] = value;
    }
    validate(rc);

    if (sub == analyze_cmd) return cmd_analyze(rc, out);
    if (sub == verify_cmd) return cmd_verify(rc, out);
    return cmd_mesh(rc, out);
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << '\n';
    return is_configuration_error(e.kind()) ? kExitConfig : kExitGeometry;
  } catch (const IOFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitIO;
  }
}

}  // namespace h3
