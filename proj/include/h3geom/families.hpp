#pragma once

// The surfaces of H₃(τ) classified by constant angle: flat minimal planes and
// CMC cylinders (ν = 0), and the spacelike/timelike helix surfaces (ν ≠ 0, δ = 1).

#include <string>
#include <vector>

#include "h3geom/surface.hpp"

namespace h3 {

enum class Causal { timelike, spacelike };

const char* to_string(Causal c) noexcept;

/// δ = −1: (sinφ₀ v, −cosφ₀ v, u); δ = 1 timelike: (sinhφ₀ v, coshφ₀ v, u);
/// δ = 1 spacelike: (coshφ₀ v, sinhφ₀ v, u).
SurfacePatch make_minimal_plane(int delta, Causal causal, double phi0, double tau, const Domain& domain);

/// δ = −1: (−cos v, −sin v, u − τv); δ = 1 timelike: (cosh v, sinh v, u − τv);
/// δ = 1 spacelike: (sinh v, cosh v, u + τv).
SurfacePatch make_cmc_cylinder(int delta, Causal causal, double tau, const Domain& domain);

// ---------------------------------------------------------------------------
// Helix profiles

struct EtaSpec {
  enum class Kind { constant, linear, polynomial, sinusoidal };
  Kind kind = Kind::constant;
  /// constant: {k}; linear: {a0, a1}; polynomial: {a0, …, an}, n ≤ 6;
  /// sinusoidal: {A, ω, φ} for A sin(ωv + φ)
  std::vector<double> coefficients{0.0};

  double operator()(double v) const;
  double derivative(double v) const;
  /// Throws InvalidProfile on malformed coefficient lists.
  void validate() const;
};

const char* to_string(EtaSpec::Kind k) noexcept;
EtaSpec::Kind eta_kind_from_string(const std::string& s);

struct HelixProfile {
  double theta = 1;
  double c = 0;
  EtaSpec eta;
  double tau = 1;
  Causal causal = Causal::spacelike;

  /// Throws InvalidProfile.
  void validate() const;
};

/// f = (f1, f2, f3) on a v-range, with f(v0) = 0.
///   spacelike: f1′ = coshϑ cosh(η+c), f2′ = coshϑ sinh(η+c)
///   timelike:  f1′ = −cosϑ sinh(η−c), f2′ = cosϑ cosh(η−c)
///   both:      f3′ = τ(f1 f2′ − f2 f1′)
class ProfileFunctions {
 public:
  Vec3d value(double v) const;
  Vec3d d1(double v) const;
  Vec3d d2(double v) const;

  bool closed_form() const { return closed_; }
  double v0() const { return v0_; }
  double v1() const { return v1_; }
  /// max |f1′² − f2′² ∓ cos(h)²ϑ| on the check grid
  double constraint_residual() const { return constraint_residual_; }
  /// max |f3′ − τ(f1 f2′ − f2 f1′)| on the check grid
  double f3_residual() const { return f3_residual_; }

 private:
  friend ProfileFunctions build_profile(const HelixProfile&, double, double);

  Vec2d f12_prime(double v) const;
  Vec2d f12_second(double v) const;
  void hermite(double v, Vec3d& f, Vec3d& df) const;

  HelixProfile profile_;
  double v0_ = 0, v1_ = 0;
  bool closed_ = true;
  // quadrature tables
  std::vector<double> nodes_;
  std::vector<Vec3d> values_, slopes_;
  double constraint_residual_ = 0, f3_residual_ = 0;
};

/// Closed form for constant/linear η; adaptive Simpson (abs tol 1e−10) on a
/// node table with spacing ≤ 1e−3 and cubic Hermite interpolation otherwise.
/// Throws QuadratureFailure, InvalidProfile.
ProfileFunctions build_profile(const HelixProfile& profile, double v0, double v1);

/// δ = 1 helix surface in the final (u,v) of the classification theorems.
/// Spacelike (s = sinhϑ, C = coshϑ):
///   F = (C/(2τs) cosh u + f1, C/(2τs) sinh u + f2,
///        −C²/(4τs²) u − C/(2s)(f2 cosh u − f1 sinh u) + f3)
/// Timelike (s = sinϑ, C = cosϑ):
///   F = (−C/(2τs) sinh u + f1, −C/(2τs) cosh u + f2,
///        C²/(4τs²) u − C/(2s)(f1 cosh u − f2 sinh u) + f3)
SurfacePatch make_helix_surface(const HelixProfile& profile, const Domain& domain);

/// |ν| of the helix: sinhϑ or |sinϑ|.
double helix_nu(const HelixProfile& profile);

/// μ = 2τs tanh(2τs² w + η(v)) with s = sinhϑ or sinϑ, where w is the
/// coordinate before the substitution that gives the surface its final u.
double predicted_mu(const HelixProfile& profile, double w, double v);

/// w = (u − c)/(∓2τ s²): − spacelike, + timelike.
double closed_form_u(const HelixProfile& profile, double u);

// ---------------------------------------------------------------------------
// Descriptors

struct FamilyDescriptor {
  enum class Kind { minimal_plane, cmc_cylinder, helix };
  Kind kind = Kind::minimal_plane;
  int delta = -1;
  Causal causal = Causal::timelike;
  double tau = 1;
  double phi0 = 0;     // minimal planes
  HelixProfile helix;  // helix; its tau/causal are overwritten from the fields above
  Domain domain{-1, 1, -1, 1};

  std::string name() const;
  /// ε the classification assigns to this family.
  int expected_epsilon() const;
  /// |ν| the classification assigns to this family.
  double expected_nu() const;
  HelixProfile profile() const;
};

const char* to_string(FamilyDescriptor::Kind k) noexcept;
FamilyDescriptor::Kind family_kind_from_string(const std::string& s);
Causal causal_from_string(const std::string& s);

/// Every classified family over a small parameter sample: minimal planes (three
/// parametrizations × three φ₀), CMC cylinders (three), spacelike and timelike
/// helices (τ ∈ {0.5, 1} × η ∈ {0, v, 0.3 sin v}).
std::vector<FamilyDescriptor> family_matrix();

/// Throws InvalidCombination for δ = −1 helices and δ = −1 spacelike ν = 0 families.
SurfacePatch build_family(const FamilyDescriptor& family);

}  // namespace h3
