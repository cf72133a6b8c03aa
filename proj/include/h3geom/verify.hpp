#pragma once

// Residual suites: each check reports the worst residual over its samples and
// passes iff that residual is within tolerance.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "h3geom/families.hpp"
#include "h3geom/surface.hpp"

namespace h3 {

inline constexpr std::uint64_t kDefaultSeed = 20261019;

struct Check {
  std::string id;
  double max_residual = 0;
  double tol = 0;
  int samples = 0;

  /// NaN residuals fail.
  bool pass() const { return max_residual <= tol; }
};

struct ResidualSuite {
  std::string name;
  std::uint64_t seed = kDefaultSeed;
  std::string patch;  // descriptor of what was checked
  Grid grid;
  std::vector<Check> checks;  // sorted by id

  bool pass() const;
  const Check* find(const std::string& id) const;
  void add(Check c);
  void merge(const ResidualSuite& other);
};

/// Per-check tolerances: built-in defaults plus user overrides.
class Tolerances {
 public:
  double get(const std::string& id) const;
  bool overridden(const std::string& id) const;
  /// Throws InvalidParams for unknown ids or negative/non-finite values.
  void set(const std::string& id, double value);
  static double default_for(const std::string& id);
  static const std::vector<std::string>& known_ids();

 private:
  std::map<std::string, double> overrides_;
};

struct VerifyOptions {
  Grid grid{30, 30};
  /// difference step for the finite-difference checks, in (u,v) units
  double step = 1e-3;
  std::uint64_t seed = kDefaultSeed;
  Tolerances tol;
};

// ---------------------------------------------------------------------------
// Ambient

/// Frame, bracket, connection, curvature and space-form checks for (δ, τ).
ResidualSuite check_ambient(const SpaceParams<double>& params, const VerifyOptions& opt = {});

// ---------------------------------------------------------------------------
// Surface checks. Finite-difference checks run on grid samples whose stencil
// fits in the domain; StencilTooCoarse if none does or the step is unusable.

/// |K_int − (−τ² + ε(det S + 4δν²τ²))|
Check check_gauss(const SurfacePatch& patch, const VerifyOptions& opt = {});
/// ∇_u(S∂v) − ∇_v(S∂u) + 4δεντ²[g(∂u,T)∂v − g(∂v,T)∂u], frame components
Check check_codazzi(const SurfacePatch& patch, const VerifyOptions& opt = {});
/// T(μ) + μ²ν − 4δτ²ν³; NotAHelixPatch if range(ν) > 1e−6
Check check_helix_ode(const SurfacePatch& patch, const VerifyOptions& opt = {});
/// The three parallel equations in a pseudo-orthonormal frame, X ∈ {Ē1, Ē2}.
Check check_parallel(const SurfacePatch& patch, const VerifyOptions& opt = {});
/// structure.T, structure.nu, surface.gtt, surface.normal
std::vector<Check> check_structure(const SurfacePatch& patch, const VerifyOptions& opt = {});
/// |K_ext − K_int|
Check check_curvature(const SurfacePatch& patch, const VerifyOptions& opt = {});
/// ∇_T T = −2δτν JT, ∇_JT T = μν JT, ∇_T JT = −2εδτν T, ∇_JT JT = εμν T
Check check_adapted_connection(const SurfacePatch& patch, const VerifyOptions& opt = {});
/// The classification's invariants for the family the patch was built from.
std::vector<Check> check_family(const FamilyDescriptor& family, const SurfacePatch& patch,
                                const VerifyOptions& opt = {});
/// parallel ⇒ CMC; CMC ⇔ parallel (constant angle); K = 4δετ²ν²; H = μ/2; |S12| ≥ |τ|.
ResidualSuite check_claims(const SurfacePatch& patch, const VerifyOptions& opt = {});

// Low-level parallel residual, exposed for synthetic inputs.
struct ParallelCheckInput {
  int epsilon = -1;
  double g11 = 1, g12 = 0, g22 = 1;  // Gram matrix of {Ē1, Ē2}
  Mat2d S = Mat2d::Zero();           // in {Ē1, Ē2}
  // X(S_ij) for X = Ē1, Ē2
  Vec2d dS11 = Vec2d::Zero(), dS12 = Vec2d::Zero(), dS22 = Vec2d::Zero();
  Vec2d omega = Vec2d::Zero();       // g(∇_X Ē1, Ē2) for X = Ē1, Ē2
};
/// Throws DegenerateFrame when the frame is not normalized to 1e−10.
double parallel_residual(const ParallelCheckInput& in);

// ---------------------------------------------------------------------------
// Orchestration

/// Suite names accepted by run_suites.
const std::vector<std::string>& suite_names();

/// Builds the family and runs the named suites ("all" = every applicable one).
/// Throws InvalidParams on unknown names.
ResidualSuite run_suites(const FamilyDescriptor& family, const std::vector<std::string>& suites,
                         const VerifyOptions& opt = {});

}  // namespace h3
