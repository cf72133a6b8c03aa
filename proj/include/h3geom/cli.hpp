#pragma once

// Command-line front end: a JSON config names one family (or the whole family
// matrix), the grid, suites and outputs.
//
//   h3geom analyze --config c.json --out dir
//   h3geom verify  --config c.json --suite all --tol gauss=1e-6
//   h3geom mesh    --config c.json --out dir

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "h3geom/families.hpp"
#include "h3geom/verify.hpp"

namespace h3 {

enum ExitCode : int { kExitPass = 0, kExitSuiteFail = 1, kExitConfig = 2, kExitGeometry = 3, kExitIO = 4 };

struct RunConfig {
  std::vector<FamilyDescriptor> families;
  Grid grid{30, 30};
  std::vector<std::string> suites{"all"};
  std::uint64_t seed = kDefaultSeed;
  std::string out = ".";
  std::map<std::string, double> tolerances;
};

/// Parses a config document. Throws GeometryError(InvalidParams) on malformed
/// JSON, unknown names, grids below 8×8 and bad values.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Helix: u ∈ [−1,1], v ∈ [0,2]; CMC: v ∈ [−1.5,1.5]; minimal: [−1,1]².
Domain default_domain(FamilyDescriptor::Kind kind);

/// Output stem for family k of n: "" when n == 1, otherwise "family_KK_".
std::string output_stem(std::size_t k, std::size_t n);

/// Entry point behind the executable; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace h3
