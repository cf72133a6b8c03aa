#pragma once

// Serialization of reports, suites and meshes. Every double goes through
// format_double so repeated runs are byte-identical.

#include <iosfwd>
#include <string>

#include "h3geom/families.hpp"
#include "h3geom/surface.hpp"
#include "h3geom/verify.hpp"

namespace h3 {

/// %.17g; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double x);

/// u,v,nu,H,K_ext,K_int,eps,S11,S12,S21,S22, one row per sample in grid order.
void write_report_csv(std::ostream& os, const GeometryReport& report);

/// Summary object: epsilon, basis, grid, sample counts and ν/H/K stats.
std::string report_summary_json(const GeometryReport& report, const FamilyDescriptor& family);

/// {suite, seed, patch, grid, checks:[{id, max_residual, tol, verdict}], verdict}
std::string suite_json(const ResidualSuite& suite);

/// Raw chart coordinates of the grid, quads split into two triangles.
void write_obj(std::ostream& os, const SurfacePatch& patch, const Grid& grid, const FamilyDescriptor& family,
               const ReportSummary& summary);

}  // namespace h3
