#include "h3geom/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace h3 {

using ojson = nlohmann::ordered_json;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_report_csv(std::ostream& os, const GeometryReport& report) {
  os << "u,v,nu,H,K_ext,K_int,eps,S11,S12,S21,S22\n";
  for (const SampleRecord& r : report.records) {
    os << format_double(r.u) << ',' << format_double(r.v) << ',' << format_double(r.nu) << ','
       << format_double(r.H) << ',' << format_double(r.K_ext) << ',' << format_double(r.K_int) << ',' << r.eps
       << ',' << format_double(r.S(0, 0)) << ',' << format_double(r.S(0, 1)) << ','
       << format_double(r.S(1, 0)) << ',' << format_double(r.S(1, 1)) << '\n';
  }
}

namespace {

// NaN becomes null; nlohmann writes the shortest string that round-trips.
ojson num(double x) { return std::isfinite(x) ? ojson(x) : ojson(nullptr); }

ojson stat_json(const Stat& s) {
  return ojson{{"mean", num(s.mean)}, {"min", num(s.min)}, {"max", num(s.max)},
               {"range", num(s.range())}, {"count", s.count}};
}

ojson grid_json(const Grid& g) { return ojson{{"nu", g.nu}, {"nv", g.nv}}; }

}  // namespace

std::string report_summary_json(const GeometryReport& report, const FamilyDescriptor& family) {
  const ReportSummary& s = report.summary;
  ojson j;
  j["family"] = family.name();
  j["label"] = report.label;
  j["epsilon"] = s.eps;
  j["basis"] = to_string(s.basis);
  j["grid"] = grid_json(report.grid);
  j["samples"] = s.samples;
  j["skipped"] = s.skipped;
  j["nu"] = stat_json(s.nu);
  j["H"] = stat_json(s.H);
  j["K_ext"] = stat_json(s.K_ext);
  j["K_int"] = stat_json(s.K_int);
  return j.dump(2) + "\n";
}

std::string suite_json(const ResidualSuite& suite) {
  ojson checks = ojson::array();
  for (const Check& c : suite.checks) {
    checks.push_back(ojson{{"id", c.id},
                           {"max_residual", num(c.max_residual)},
                           {"tol", num(c.tol)},
                           {"samples", c.samples},
                           {"verdict", c.pass() ? "pass" : "fail"}});
  }
  ojson j;
  j["suite"] = suite.name;
  j["seed"] = suite.seed;
  j["patch"] = suite.patch;
  j["grid"] = grid_json(suite.grid);
  j["checks"] = std::move(checks);
  j["verdict"] = suite.pass() ? "pass" : "fail";
  return j.dump(2) + "\n";
}

void write_obj(std::ostream& os, const SurfacePatch& patch, const Grid& grid, const FamilyDescriptor& family,
               const ReportSummary& summary) {
  os << "# family " << family.name() << '\n';
  os << "# epsilon " << summary.eps << '\n';
  os << "# nu " << format_double(summary.nu.mean) << '\n';
  os << "# K " << format_double(summary.K_ext.mean) << '\n';
  os << "# grid " << grid.nu << ' ' << grid.nv << '\n';
  os << "# vertices are raw chart coordinates (x,y,z); the ambient metric is Lorentzian, not Euclidean\n";
  const Domain& d = patch.domain();
  for (int j = 0; j < grid.nv; ++j) {
    for (int i = 0; i < grid.nu; ++i) {
      const Vec3d p = patch.position(grid.u_at(d, i), grid.v_at(d, j));
      os << "v " << format_double(p.x()) << ' ' << format_double(p.y()) << ' ' << format_double(p.z()) << '\n';
    }
  }
  // OBJ indices are 1-based; vertex (i,j) is j*nu + i + 1
  for (int j = 0; j + 1 < grid.nv; ++j) {
    for (int i = 0; i + 1 < grid.nu; ++i) {
      const int a = j * grid.nu + i + 1, b = a + 1, c = a + grid.nu, e = c + 1;
      os << "f " << a << ' ' << b << ' ' << e << '\n';
      os << "f " << a << ' ' << e << ' ' << c << '\n';
    }
  }
}

}  // namespace h3
