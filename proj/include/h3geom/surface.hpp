#pragma once

// Immersed patches F: [u0,u1]×[v0,v1] → H₃(τ) and their extrinsic/intrinsic
// geometry. Ambient vectors along the patch are carried in frame components
// (E1, E2, E3); tangent vectors of the patch in coordinates w.r.t. (F_u, F_v).

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "h3geom/ambient.hpp"

namespace h3 {

using Vec2d = Eigen::Vector2d;
using Mat2d = Eigen::Matrix2d;
using Vec3d = Vec3<double>;

struct Domain {
  double u0 = 0, u1 = 1, v0 = 0, v1 = 1;

  bool contains(double u, double v, double margin = 0) const {
    return u >= u0 + margin && u <= u1 - margin && v >= v0 + margin && v <= v1 - margin;
  }
  double u_center() const { return 0.5 * (u0 + u1); }
  double v_center() const { return 0.5 * (v0 + v1); }
};

/// Position and partials up to order two.
struct Jet {
  Vec3d p = Vec3d::Zero();
  Vec3d fu = Vec3d::Zero(), fv = Vec3d::Zero();
  Vec3d fuu = Vec3d::Zero(), fuv = Vec3d::Zero(), fvv = Vec3d::Zero();
};

enum class JetSource { analytic, finite_difference };

class SurfacePatch {
 public:
  using JetFn = std::function<Jet(double, double)>;
  using MapFn = std::function<Vec3d(double, double)>;

  /// Exact jets supplied by the caller.
  static SurfacePatch analytic(SpaceParams<double> space, Domain domain, JetFn jet, std::string label = {});
  /// Jets by five-point differences of the immersion with step h; usable on the
  /// domain shrunk by 2h.
  static SurfacePatch sampled(SpaceParams<double> space, Domain domain, MapFn immersion, std::string label = {},
                              double h = 1e-3);

  /// Throws OutOfDomain outside domain() shrunk by margin().
  Jet jet(double u, double v) const;
  Vec3d position(double u, double v) const { return jet(u, v).p; }

  const SpaceParams<double>& space() const { return space_; }
  const Domain& domain() const { return domain_; }
  JetSource source() const { return source_; }
  const std::string& label() const { return label_; }
  double margin() const { return source_ == JetSource::analytic ? 0.0 : 2 * step_; }
  /// ±1 applied to the raw normal F_u ∧ F_v so the orientation gauge holds.
  int orientation() const { return orientation_; }

 private:
  SurfacePatch() = default;
  void fix_orientation();

  SpaceParams<double> space_;
  Domain domain_;
  JetSource source_ = JetSource::analytic;
  JetFn jet_;
  MapFn map_;
  std::string label_;
  double step_ = 0;
  int orientation_ = 1;
};

struct FirstFundamentalForm {
  Mat2d m = Mat2d::Identity();
  /// +1 timelike patch (spacelike normal), −1 spacelike patch.
  int epsilon = -1;
};

enum class Basis { coordinate, adapted };

const char* to_string(Basis basis) noexcept;

/// Columns are images: S e_j = Σ_i m(i,j) e_i.
struct ShapeOperator2x2 {
  Mat2d m = Mat2d::Zero();
  Basis basis = Basis::coordinate;
};

/// Everything first-order-extrinsic at one sample, computed in one pass.
struct SampleGeometry {
  double u = 0, v = 0;
  Jet jet;
  FirstFundamentalForm first;
  Vec3d tu, tv;   // F_u, F_v in frame components
  Vec3d normal;   // N in frame components, g(N,N) = ε
  double nu = 0;  // ε g(N, E3)
  Vec3d t, jt;    // T = E3 − νN and JT = N ∧ T, frame components
  double gtt = 0;
  ShapeOperator2x2 s_coord;
  std::optional<ShapeOperator2x2> s_adapted;  // absent when |g(T,T)| < 1e−8
  double mean = 0;
  double k_ext = 0;
};

SampleGeometry evaluate(const SurfacePatch& patch, double u, double v);

FirstFundamentalForm induced_metric(const SurfacePatch& patch, double u, double v);
TangentVector<double> unit_normal(const SurfacePatch& patch, double u, double v);
double angle_function(const SurfacePatch& patch, double u, double v);
TangentVector<double> tangent_part_T(const SurfacePatch& patch, double u, double v);
/// X given in coordinates of ℝ³ at F(u,v); must be tangent to the patch.
TangentVector<double> tangent_rotation_J(const SurfacePatch& patch, double u, double v, const Vec3d& x);
ShapeOperator2x2 shape_operator(const SurfacePatch& patch, double u, double v, Basis basis);
double mean_curvature(const SurfacePatch& patch, double u, double v);

enum class CurvatureMethod { extrinsic, intrinsic };
double gaussian_curvature(const SurfacePatch& patch, double u, double v, CurvatureMethod method,
                          double h = 1e-3);

// ---------------------------------------------------------------------------
// Intrinsic helpers built from the first fundamental form alone.

/// I and its partials, five-point differences with step h.
struct MetricJet {
  Mat2d g, gu, gv, guu, guv, gvv;
};

/// Throws OutOfDomain when the stencil leaves the usable domain.
MetricJet metric_jet(const SurfacePatch& patch, double u, double v, double h = 1e-3);

/// Gauss curvature of a 2-metric from its jet (Brioschi form; valid in any signature).
double brioschi(const MetricJet& mj);

/// Γ[k](i,j) of the induced metric.
std::array<Mat2d, 2> induced_christoffel(const MetricJet& mj);

// ---------------------------------------------------------------------------
// Frame-component helpers shared with verify.

/// Frame components of a tangent vector of the patch, from its (F_u,F_v) coordinates.
Vec3d push_forward(const SampleGeometry& s, const Vec2d& c);
/// (F_u,F_v) coordinates of a tangent vector given in frame components.
Vec2d pull_back(const SpaceParams<double>& space, const SampleGeometry& s, const Vec3d& w);
/// Frame components of ∂(W)/∂t along a curve with velocity dp, where W has coordinate
/// components w with derivative dw. The frame itself varies with the base point.
Vec3d frame_derivative(const SpaceParams<double>& space, const Vec3d& p, const Vec3d& dp, const Vec3d& w,
                       const Vec3d& dw);

// ---------------------------------------------------------------------------
// Grid reports

struct Grid {
  int nu = 50, nv = 50;

  double u_at(const Domain& d, int i) const { return nu == 1 ? d.u0 : d.u0 + (d.u1 - d.u0) * i / (nu - 1); }
  double v_at(const Domain& d, int j) const { return nv == 1 ? d.v0 : d.v0 + (d.v1 - d.v0) * j / (nv - 1); }
};

struct SampleRecord {
  double u = 0, v = 0, nu = 0, H = 0, K_ext = 0;
  double K_int = 0;  // NaN when the stencil does not fit
  int eps = 0;
  Mat2d S = Mat2d::Zero();
  Vec3d T = Vec3d::Zero();  // coordinate components
};

struct Stat {
  double mean = 0, min = 0, max = 0;
  int count = 0;

  double range() const { return max - min; }
};

struct ReportSummary {
  Stat nu, H, K_ext, K_int;
  int eps = 0;  // 0 when mixed
  Basis basis = Basis::adapted;
  int samples = 0, skipped = 0;  // skipped: K_int unavailable
};

struct GeometryReport {
  std::string label;
  Grid grid;
  std::vector<SampleRecord> records;  // v-major: index j*nu + i
  ReportSummary summary;
};

GeometryReport analyze(const SurfacePatch& patch, const Grid& grid, double h = 1e-3);

Stat summarize(const std::vector<double>& values);

}  // namespace h3
