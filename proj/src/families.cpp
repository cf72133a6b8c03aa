#include "h3geom/families.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <utility>

namespace h3 {

namespace {

void require_tau(double tau) {
  if (!(std::isfinite(tau) && tau != 0)) {
    throw GeometryError(ErrorKind::InvalidParams, "surface families need a finite tau != 0");
  }
}

void require_domain(const Domain& d) {
  if (!(d.u1 > d.u0 && d.v1 > d.v0) || !std::isfinite(d.u0 + d.u1 + d.v0 + d.v1)) {
    throw GeometryError(ErrorKind::InvalidParams, "domain must be a nonempty finite rectangle");
  }
}

std::string causal_label(int delta, Causal causal) {
  return "delta=" + std::to_string(delta) + " " + to_string(causal);
}

// Cubic Hermite on [a, a+h] from end values and slopes; returns value and derivative.
void hermite_cell(double t, double h, double f0, double f1, double m0, double m1, double& f, double& df) {
  const double t2 = t * t, t3 = t2 * t;
  f = (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + t) * h * m0 + (-2 * t3 + 3 * t2) * f1 + (t3 - t2) * h * m1;
  df = ((6 * t2 - 6 * t) * f0 + (3 * t2 - 4 * t + 1) * h * m0 + (-6 * t2 + 6 * t) * f1 + (3 * t2 - 2 * t) * h * m1) / h;
}

struct Simpson {
  const std::function<double(double)>& f;
  int max_depth = 40;

  double run(double a, double b, double tol) const {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    return step(a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), tol, 0);
  }

  double step(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) const {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6 * (fm + 4 * frm + fb);
    const double err = left + right - whole;
    if (std::abs(err) <= 15 * tol) return left + right + err / 15;
    if (depth >= max_depth || !std::isfinite(err)) {
      throw GeometryError(ErrorKind::QuadratureFailure, "adaptive Simpson did not reach tolerance");
    }
    return step(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) + step(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

const char* to_string(Causal c) noexcept { return c == Causal::timelike ? "timelike" : "spacelike"; }

// ---------------------------------------------------------------------------
// ν = 0 families

SurfacePatch make_minimal_plane(int delta, Causal causal, double phi0, double tau, const Domain& domain) {
  const auto space = make_space(delta, tau);
  require_tau(tau);
  require_domain(domain);
  if (delta == -1 && causal == Causal::spacelike) {
    throw GeometryError(ErrorKind::InvalidCombination, "delta = -1 admits only timelike minimal planes");
  }
  Vec3d dir;
  if (delta == -1) {
    dir = {std::sin(phi0), -std::cos(phi0), 0};
  } else if (causal == Causal::timelike) {
    dir = {std::sinh(phi0), std::cosh(phi0), 0};
  } else {
    dir = {std::cosh(phi0), std::sinh(phi0), 0};
  }
  auto jet = [dir](double u, double v) {
    Jet j;
    j.p = v * dir + Vec3d(0, 0, u);
    j.fu = Vec3d(0, 0, 1);
    j.fv = dir;
    return j;
  };
  return SurfacePatch::analytic(space, domain, jet, "minimal_plane " + causal_label(delta, causal));
}

SurfacePatch make_cmc_cylinder(int delta, Causal causal, double tau, const Domain& domain) {
  const auto space = make_space(delta, tau);
  require_tau(tau);
  require_domain(domain);
  if (delta == -1 && causal == Causal::spacelike) {
    throw GeometryError(ErrorKind::InvalidCombination, "delta = -1 admits only timelike CMC cylinders");
  }
  SurfacePatch::JetFn jet;
  if (delta == -1) {
    jet = [tau](double u, double v) {
      const double c = std::cos(v), s = std::sin(v);
      Jet j;
      j.p = {-c, -s, u - tau * v};
      j.fu = {0, 0, 1};
      j.fv = {s, -c, -tau};
      j.fvv = {c, s, 0};
      return j;
    };
  } else if (causal == Causal::timelike) {
    jet = [tau](double u, double v) {
      const double c = std::cosh(v), s = std::sinh(v);
      Jet j;
      j.p = {c, s, u - tau * v};
      j.fu = {0, 0, 1};
      j.fv = {s, c, -tau};
      j.fvv = {c, s, 0};
      return j;
    };
  } else {
    jet = [tau](double u, double v) {
      const double c = std::cosh(v), s = std::sinh(v);
      Jet j;
      j.p = {s, c, u + tau * v};
      j.fu = {0, 0, 1};
      j.fv = {c, s, tau};
      j.fvv = {s, c, 0};
      return j;
    };
  }
  return SurfacePatch::analytic(space, domain, jet, "cmc_cylinder " + causal_label(delta, causal));
}

// ---------------------------------------------------------------------------
// η

double EtaSpec::operator()(double v) const {
  const auto& a = coefficients;
  switch (kind) {
    case Kind::constant: return a[0];
    case Kind::linear: return a[0] + a[1] * v;
    case Kind::polynomial: {
      double acc = 0;
      for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * v + *it;
      return acc;
    }
    case Kind::sinusoidal: return a[0] * std::sin(a[1] * v + (a.size() > 2 ? a[2] : 0.0));
  }
  return 0;
}

double EtaSpec::derivative(double v) const {
  const auto& a = coefficients;
  switch (kind) {
    case Kind::constant: return 0;
    case Kind::linear: return a[1];
    case Kind::polynomial: {
      double acc = 0;
      for (std::size_t k = a.size(); k-- > 1;) acc = acc * v + static_cast<double>(k) * a[k];
      return acc;
    }
    case Kind::sinusoidal: return a[0] * a[1] * std::cos(a[1] * v + (a.size() > 2 ? a[2] : 0.0));
  }
  return 0;
}

void EtaSpec::validate() const {
  const auto bad = [](const std::string& what) { throw GeometryError(ErrorKind::InvalidProfile, "eta: " + what); };
  for (double x : coefficients) {
    if (!std::isfinite(x)) bad("coefficients must be finite");
  }
  const std::size_t n = coefficients.size();
  switch (kind) {
    case Kind::constant:
      if (n != 1) bad("constant takes 1 coefficient");
      break;
    case Kind::linear:
      if (n != 2) bad("linear takes 2 coefficients");
      break;
    case Kind::polynomial:
      if (n < 1 || n > 7) bad("polynomial takes 1 to 7 coefficients (degree <= 6)");
      break;
    case Kind::sinusoidal:
      if (n != 2 && n != 3) bad("sinusoidal takes {A, omega[, phase]}");
      break;
  }
}

const char* to_string(EtaSpec::Kind k) noexcept {
  switch (k) {
    case EtaSpec::Kind::constant: return "constant";
    case EtaSpec::Kind::linear: return "linear";
    case EtaSpec::Kind::polynomial: return "polynomial";
    case EtaSpec::Kind::sinusoidal: return "sinusoidal";
  }
  return "?";
}

EtaSpec::Kind eta_kind_from_string(const std::string& s) {
  if (s == "constant") return EtaSpec::Kind::constant;
  if (s == "linear") return EtaSpec::Kind::linear;
  if (s == "polynomial") return EtaSpec::Kind::polynomial;
  if (s == "sinusoidal") return EtaSpec::Kind::sinusoidal;
  throw GeometryError(ErrorKind::InvalidProfile, "unknown eta kind '" + s + "'");
}

void HelixProfile::validate() const {
  eta.validate();
  if (!(std::isfinite(theta) && std::isfinite(c))) throw GeometryError(ErrorKind::InvalidProfile, "theta, c must be finite");
  require_tau(tau);
  if (causal == Causal::spacelike && !(theta > 0)) {
    throw GeometryError(ErrorKind::InvalidProfile, "spacelike helix needs theta > 0");
  }
  if (causal == Causal::timelike && (std::abs(std::sin(theta)) <= 1e-8 || std::abs(std::cos(theta)) <= 1e-8)) {
    throw GeometryError(ErrorKind::InvalidProfile, "timelike helix needs sin(theta) and cos(theta) away from 0");
  }
}

// ---------------------------------------------------------------------------
// Profile functions

Vec2d ProfileFunctions::f12_prime(double v) const {
  const double e = profile_.eta(v);
  if (profile_.causal == Causal::spacelike) {
    const double C = std::cosh(profile_.theta);
    return {C * std::cosh(e + profile_.c), C * std::sinh(e + profile_.c)};
  }
  const double C = std::cos(profile_.theta);
  return {-C * std::sinh(e - profile_.c), C * std::cosh(e - profile_.c)};
}

Vec2d ProfileFunctions::f12_second(double v) const {
  const double e = profile_.eta(v), de = profile_.eta.derivative(v);
  if (profile_.causal == Causal::spacelike) {
    const double C = std::cosh(profile_.theta);
    return {C * de * std::sinh(e + profile_.c), C * de * std::cosh(e + profile_.c)};
  }
  const double C = std::cos(profile_.theta);
  return {-C * de * std::cosh(e - profile_.c), C * de * std::sinh(e - profile_.c)};
}

void ProfileFunctions::hermite(double v, Vec3d& f, Vec3d& df) const {
  const double h = nodes_[1] - nodes_[0];
  const std::size_t cells = nodes_.size() - 1;
  const double pos = (v - v0_) / h;
  std::size_t k = pos <= 0 ? 0 : static_cast<std::size_t>(pos);
  if (k >= cells) k = cells - 1;
  const double t = (v - nodes_[k]) / h;
  for (int i = 0; i < 3; ++i) {
    hermite_cell(t, h, values_[k][i], values_[k + 1][i], slopes_[k][i], slopes_[k + 1][i], f[i], df[i]);
  }
}

Vec3d ProfileFunctions::value(double v) const {
  if (!closed_) {
    if (v < v0_ - 1e-12 || v > v1_ + 1e-12) {
      throw GeometryError(ErrorKind::OutOfDomain, "profile table does not cover v = " + std::to_string(v));
    }
    Vec3d f, df;
    hermite(v, f, df);
    return f;
  }
  const double tau = profile_.tau;
  const bool space = profile_.causal == Causal::spacelike;
  const double C = space ? std::cosh(profile_.theta) : std::cos(profile_.theta);
  const double dv = v - v0_;
  if (profile_.eta.kind == EtaSpec::Kind::constant ||
      (profile_.eta.kind == EtaSpec::Kind::linear && profile_.eta.coefficients[1] == 0)) {
    const Vec2d d = f12_prime(v0_);
    return {d[0] * dv, d[1] * dv, 0};
  }
  const double a1 = profile_.eta.coefficients[1];
  const double s = space ? profile_.eta(v) + profile_.c : profile_.eta(v) - profile_.c;
  const double s0 = space ? profile_.eta(v0_) + profile_.c : profile_.eta(v0_) - profile_.c;
  const double f3 = tau * C * C / a1 * (std::sinh(a1 * dv) / a1 - dv);
  if (space) return {C / a1 * (std::sinh(s) - std::sinh(s0)), C / a1 * (std::cosh(s) - std::cosh(s0)), f3};
  return {-C / a1 * (std::cosh(s) - std::cosh(s0)), C / a1 * (std::sinh(s) - std::sinh(s0)), f3};
}

Vec3d ProfileFunctions::d1(double v) const {
  const Vec3d f = value(v);
  const Vec2d d = f12_prime(v);
  return {d[0], d[1], profile_.tau * (f[0] * d[1] - f[1] * d[0])};
}

Vec3d ProfileFunctions::d2(double v) const {
  const Vec3d f = value(v);
  const Vec2d dd = f12_second(v);
  return {dd[0], dd[1], profile_.tau * (f[0] * dd[1] - f[1] * dd[0])};
}

ProfileFunctions build_profile(const HelixProfile& profile, double v0, double v1) {
  profile.validate();
  if (!(v1 > v0) || !std::isfinite(v0 + v1)) throw GeometryError(ErrorKind::InvalidParams, "empty v-range");
  ProfileFunctions pf;
  pf.profile_ = profile;
  pf.v0_ = v0;
  pf.v1_ = v1;
  const auto kind = profile.eta.kind;
  pf.closed_ = kind == EtaSpec::Kind::constant || kind == EtaSpec::Kind::linear;
  const bool space = profile.causal == Causal::spacelike;
  const double C = space ? std::cosh(profile.theta) : std::cos(profile.theta);
  const double target = space ? C * C : -C * C;

  if (pf.closed_) {
    // residuals on a dense check grid, f3′ by a five-point difference of the closed form
    const int n = 1000;
    const double hd = 1e-4;
    for (int k = 0; k <= n; ++k) {
      const double v = v0 + (v1 - v0) * k / n;
      const Vec3d d = pf.d1(v);
      pf.constraint_residual_ = std::max(pf.constraint_residual_, std::abs(d[0] * d[0] - d[1] * d[1] - target));
      const double df3 = (8 * (pf.value(v + hd)[2] - pf.value(v - hd)[2]) -
                          (pf.value(v + 2 * hd)[2] - pf.value(v - 2 * hd)[2])) / (12 * hd);
      pf.f3_residual_ = std::max(pf.f3_residual_, std::abs(df3 - d[2]));
    }
    return pf;
  }

  const int cells = std::max(1, static_cast<int>(std::ceil((v1 - v0) / 1e-3)));
  const double h = (v1 - v0) / cells;
  const double cell_tol = 1e-10 / cells;
  pf.nodes_.resize(cells + 1);
  pf.values_.assign(cells + 1, Vec3d::Zero());
  pf.slopes_.assign(cells + 1, Vec3d::Zero());
  for (int k = 0; k <= cells; ++k) pf.nodes_[k] = k == cells ? v1 : v0 + k * h;

  // pass 1: f1, f2 from their closed-form integrands
  const std::function<double(double)> g1 = [&](double v) { return pf.f12_prime(v)[0]; };
  const std::function<double(double)> g2 = [&](double v) { return pf.f12_prime(v)[1]; };
  for (int k = 0; k <= cells; ++k) {
    const Vec2d d = pf.f12_prime(pf.nodes_[k]);
    pf.slopes_[k][0] = d[0];
    pf.slopes_[k][1] = d[1];
    if (k == 0) continue;
    pf.values_[k][0] = pf.values_[k - 1][0] + Simpson{g1}.run(pf.nodes_[k - 1], pf.nodes_[k], cell_tol);
    pf.values_[k][1] = pf.values_[k - 1][1] + Simpson{g2}.run(pf.nodes_[k - 1], pf.nodes_[k], cell_tol);
  }
  // pass 2: f3 from the interpolated f1, f2
  for (int k = 0; k <= cells; ++k) {
    const Vec3d& f = pf.values_[k];
    pf.slopes_[k][2] = profile.tau * (f[0] * pf.slopes_[k][1] - f[1] * pf.slopes_[k][0]);
  }
  for (int k = 1; k <= cells; ++k) {
    const double a = pf.nodes_[k - 1], hk = pf.nodes_[k] - a;
    const std::function<double(double)> g3 = [&](double v) {
      double f1, f2, df;
      const double t = (v - a) / hk;
      hermite_cell(t, hk, pf.values_[k - 1][0], pf.values_[k][0], pf.slopes_[k - 1][0], pf.slopes_[k][0], f1, df);
      hermite_cell(t, hk, pf.values_[k - 1][1], pf.values_[k][1], pf.slopes_[k - 1][1], pf.slopes_[k][1], f2, df);
      const Vec2d d = pf.f12_prime(v);
      return profile.tau * (f1 * d[1] - f2 * d[0]);
    };
    pf.values_[k][2] = pf.values_[k - 1][2] + Simpson{g3}.run(a, pf.nodes_[k], cell_tol);
  }

  // residuals from the interpolant's own derivatives at cell midpoints
  for (int k = 0; k < cells; ++k) {
    Vec3d f, df;
    pf.hermite(0.5 * (pf.nodes_[k] + pf.nodes_[k + 1]), f, df);
    pf.constraint_residual_ = std::max(pf.constraint_residual_, std::abs(df[0] * df[0] - df[1] * df[1] - target));
    pf.f3_residual_ = std::max(pf.f3_residual_, std::abs(df[2] - profile.tau * (f[0] * df[1] - f[1] * df[0])));
  }
  return pf;
}

// ---------------------------------------------------------------------------
// Helix surfaces

SurfacePatch make_helix_surface(const HelixProfile& profile, const Domain& domain) {
  require_domain(domain);
  const ProfileFunctions pf = build_profile(profile, domain.v0, domain.v1);
  const auto space = make_space(1, profile.tau);
  const double tau = profile.tau;
  const bool spacelike = profile.causal == Causal::spacelike;
  const double s = spacelike ? std::sinh(profile.theta) : std::sin(profile.theta);
  const double C = spacelike ? std::cosh(profile.theta) : std::cos(profile.theta);
  const double A = C / (2 * tau * s);
  const double k = C / (2 * s);
  const double slope = C * C / (4 * tau * s * s);

  SurfacePatch::JetFn jet;
  if (spacelike) {
    jet = [=](double u, double v) {
      const Vec3d f = pf.value(v), df = pf.d1(v), ddf = pf.d2(v);
      const double ch = std::cosh(u), sh = std::sinh(u);
      Jet j;
      j.p = {A * ch + f[0], A * sh + f[1], -slope * u - k * (f[1] * ch - f[0] * sh) + f[2]};
      j.fu = {A * sh, A * ch, -slope - k * (f[1] * sh - f[0] * ch)};
      j.fuu = {A * ch, A * sh, -k * (f[1] * ch - f[0] * sh)};
      j.fv = {df[0], df[1], -k * (df[1] * ch - df[0] * sh) + df[2]};
      j.fuv = {0, 0, -k * (df[1] * sh - df[0] * ch)};
      j.fvv = {ddf[0], ddf[1], -k * (ddf[1] * ch - ddf[0] * sh) + ddf[2]};
      return j;
    };
  } else {
    jet = [=](double u, double v) {
      const Vec3d f = pf.value(v), df = pf.d1(v), ddf = pf.d2(v);
      const double ch = std::cosh(u), sh = std::sinh(u);
      Jet j;
      j.p = {-A * sh + f[0], -A * ch + f[1], slope * u - k * (f[0] * ch - f[1] * sh) + f[2]};
      j.fu = {-A * ch, -A * sh, slope - k * (f[0] * sh - f[1] * ch)};
      j.fuu = {-A * sh, -A * ch, -k * (f[0] * ch - f[1] * sh)};
      j.fv = {df[0], df[1], -k * (df[0] * ch - df[1] * sh) + df[2]};
      j.fuv = {0, 0, -k * (df[0] * sh - df[1] * ch)};
      j.fvv = {ddf[0], ddf[1], -k * (ddf[0] * ch - ddf[1] * sh) + ddf[2]};
      return j;
    };
  }
  return SurfacePatch::analytic(space, domain, jet, std::string("helix ") + to_string(profile.causal));
}

double helix_nu(const HelixProfile& profile) {
  return profile.causal == Causal::spacelike ? std::sinh(profile.theta) : std::abs(std::sin(profile.theta));
}

double predicted_mu(const HelixProfile& profile, double w, double v) {
  const double s = profile.causal == Causal::spacelike ? std::sinh(profile.theta) : std::sin(profile.theta);
  return 2 * profile.tau * s * std::tanh(2 * profile.tau * s * s * w + profile.eta(v));
}

double closed_form_u(const HelixProfile& profile, double u) {
  const double s = profile.causal == Causal::spacelike ? std::sinh(profile.theta) : std::sin(profile.theta);
  const double scale = 2 * profile.tau * s * s;
  return profile.causal == Causal::spacelike ? (u - profile.c) / -scale : (u - profile.c) / scale;
}

}  // namespace h3

namespace h3 {

const char* to_string(FamilyDescriptor::Kind k) noexcept {
  switch (k) {
    case FamilyDescriptor::Kind::minimal_plane: return "minimal_plane";
    case FamilyDescriptor::Kind::cmc_cylinder: return "cmc_cylinder";
    case FamilyDescriptor::Kind::helix: return "helix";
  }
  return "?";
}

FamilyDescriptor::Kind family_kind_from_string(const std::string& s) {
  if (s == "minimal_plane") return FamilyDescriptor::Kind::minimal_plane;
  if (s == "cmc_cylinder") return FamilyDescriptor::Kind::cmc_cylinder;
  if (s == "helix") return FamilyDescriptor::Kind::helix;
  throw GeometryError(ErrorKind::InvalidParams, "unknown family '" + s + "'");
}

Causal causal_from_string(const std::string& s) {
  if (s == "timelike") return Causal::timelike;
  if (s == "spacelike") return Causal::spacelike;
  throw GeometryError(ErrorKind::InvalidParams, "causal must be timelike or spacelike, got '" + s + "'");
}

HelixProfile FamilyDescriptor::profile() const {
  HelixProfile p = helix;
  p.tau = tau;
  p.causal = causal;
  return p;
}

std::string FamilyDescriptor::name() const {
  std::string n = std::string(to_string(kind)) + " delta=" + std::to_string(delta) + " " + to_string(causal);
  char buf[96];
  std::snprintf(buf, sizeof buf, " tau=%g", tau);
  n += buf;
  if (kind == Kind::minimal_plane) {
    std::snprintf(buf, sizeof buf, " phi0=%g", phi0);
    n += buf;
  }
  if (kind == Kind::helix) {
    std::snprintf(buf, sizeof buf, " theta=%g c=%g eta=%s", helix.theta, helix.c, to_string(helix.eta.kind));
    n += buf;
  }
  return n;
}

int FamilyDescriptor::expected_epsilon() const {
  if (delta == -1 && kind != Kind::helix) return 1;
  return causal == Causal::timelike ? 1 : -1;
}

double FamilyDescriptor::expected_nu() const { return kind == Kind::helix ? helix_nu(profile()) : 0.0; }

SurfacePatch build_family(const FamilyDescriptor& f) {
  switch (f.kind) {
    case FamilyDescriptor::Kind::minimal_plane: return make_minimal_plane(f.delta, f.causal, f.phi0, f.tau, f.domain);
    case FamilyDescriptor::Kind::cmc_cylinder: return make_cmc_cylinder(f.delta, f.causal, f.tau, f.domain);
    case FamilyDescriptor::Kind::helix:
      if (f.delta != 1) {
        throw GeometryError(ErrorKind::InvalidCombination, "helix surfaces with nu != 0 are only built for delta = 1");
      }
      return make_helix_surface(f.profile(), f.domain);
  }
  throw GeometryError(ErrorKind::InvalidParams, "unknown family");
}

}  // namespace h3

namespace h3 {

std::vector<FamilyDescriptor> family_matrix() {
  using Kind = FamilyDescriptor::Kind;
  std::vector<FamilyDescriptor> out;
  const std::pair<int, Causal> characters[3] = {
      {-1, Causal::timelike}, {1, Causal::timelike}, {1, Causal::spacelike}};
  for (const auto& [delta, causal] : characters) {
    for (double phi0 : {0.0, 0.6, -1.3}) {
      FamilyDescriptor f;
      f.kind = Kind::minimal_plane;
      f.delta = delta;
      f.causal = causal;
      f.tau = 0.7;
      f.phi0 = phi0;
      out.push_back(f);
    }
  }
  for (const auto& [delta, causal] : characters) {
    FamilyDescriptor f;
    f.kind = Kind::cmc_cylinder;
    f.delta = delta;
    f.causal = causal;
    f.tau = 0.7;
    f.domain = {-1, 1, -1.5, 1.5};
    out.push_back(f);
  }
  const EtaSpec etas[3] = {{EtaSpec::Kind::constant, {0.0}},
                           {EtaSpec::Kind::linear, {0.0, 1.0}},
                           {EtaSpec::Kind::sinusoidal, {0.3, 1.0, 0.0}}};
  for (Causal causal : {Causal::spacelike, Causal::timelike}) {
    for (double tau : {0.5, 1.0}) {
      for (const EtaSpec& eta : etas) {
        FamilyDescriptor f;
        f.kind = Kind::helix;
        f.delta = 1;
        f.causal = causal;
        f.tau = tau;
        f.helix.theta = causal == Causal::spacelike ? std::asinh(1.0) : M_PI / 4;
        f.helix.eta = eta;
        f.domain = {-1, 1, 0, 2};
        out.push_back(f);
      }
    }
  }
  return out;
}

}  // namespace h3
