#include "h3geom/surface.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <utility>

namespace h3 {

namespace {

// five-point weights for f'(0) at offsets −2..2 (times 1/(12h))
constexpr double kD1[5] = {1, -8, 0, 8, -1};
// f''(0) (times 1/(12h²))
constexpr double kD2[5] = {-1, 16, -30, 16, -1};

const Vec3d kE3(0, 0, 1);

std::string where(double u, double v) {
  std::ostringstream os;
  os.precision(17);
  os << "(u,v)=(" << u << ", " << v << ")";
  return os.str();
}

Mat2d gram(const SpaceParams<double>& s, const Vec3d& a, const Vec3d& b) {
  Mat2d m;
  m(0, 0) = frame_inner(s, a, a);
  m(0, 1) = m(1, 0) = frame_inner(s, a, b);
  m(1, 1) = frame_inner(s, b, b);
  return m;
}

int classify(const Mat2d& m, double u, double v) {
  if (std::abs(m.determinant()) < 1e-10) {
    throw GeometryError(ErrorKind::DegenerateInducedMetric, "induced metric is degenerate at " + where(u, v));
  }
  const Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Mat2d>(m, Eigen::EigenvaluesOnly).eigenvalues();
  if (ev[0] > 1e-10) return -1;
  if (ev[0] < -1e-10 && ev[1] > 1e-10) return 1;
  throw GeometryError(ErrorKind::DegenerateInducedMetric, "induced metric has no definite signature at " + where(u, v));
}

}  // namespace

// ---------------------------------------------------------------------------
// SurfacePatch

SurfacePatch SurfacePatch::analytic(SpaceParams<double> space, Domain domain, JetFn jet, std::string label) {
  SurfacePatch p;
  p.space_ = space;
  p.domain_ = domain;
  p.source_ = JetSource::analytic;
  p.jet_ = std::move(jet);
  p.label_ = std::move(label);
  p.fix_orientation();
  return p;
}

SurfacePatch SurfacePatch::sampled(SpaceParams<double> space, Domain domain, MapFn immersion, std::string label,
                                   double h) {
  if (!(h > 0) || 4 * h >= std::min(domain.u1 - domain.u0, domain.v1 - domain.v0)) {
    throw GeometryError(ErrorKind::StencilTooCoarse, "difference step does not fit in the domain");
  }
  SurfacePatch p;
  p.space_ = space;
  p.domain_ = domain;
  p.source_ = JetSource::finite_difference;
  p.map_ = std::move(immersion);
  p.label_ = std::move(label);
  p.step_ = h;
  p.fix_orientation();
  return p;
}

Jet SurfacePatch::jet(double u, double v) const {
  if (!domain_.contains(u, v, margin())) {
    throw GeometryError(ErrorKind::OutOfDomain, where(u, v) + " is outside the usable domain");
  }
  if (source_ == JetSource::analytic) return jet_(u, v);

  const double h = step_;
  Vec3d f[5][5];  // f[a][b] = F(u + (a−2)h, v + (b−2)h), only the cross is filled below
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      if (a == 2 || b == 2 || (kD1[a] != 0 && kD1[b] != 0)) f[a][b] = map_(u + (a - 2) * h, v + (b - 2) * h);
    }
  }
  Jet j;
  j.p = f[2][2];
  j.fu.setZero();
  j.fv.setZero();
  j.fuu.setZero();
  j.fvv.setZero();
  j.fuv.setZero();
  for (int a = 0; a < 5; ++a) {
    j.fu += kD1[a] * f[a][2];
    j.fv += kD1[a] * f[2][a];
    j.fuu += kD2[a] * f[a][2];
    j.fvv += kD2[a] * f[2][a];
    for (int b = 0; b < 5; ++b) {
      if (kD1[a] != 0 && kD1[b] != 0) j.fuv += kD1[a] * kD1[b] * f[a][b];
    }
  }
  j.fu /= 12 * h;
  j.fv /= 12 * h;
  j.fuu /= 12 * h * h;
  j.fvv /= 12 * h * h;
  j.fuv /= 144 * h * h;
  return j;
}

// Gauge: ν ≥ 0 at the domain centre, or, when ν vanishes there, the first
// nonzero frame component of N positive.
void SurfacePatch::fix_orientation() {
  orientation_ = 1;
  try {
    const SampleGeometry s = evaluate(*this, domain_.u_center(), domain_.v_center());
    if (std::abs(s.nu) > 1e-10) {
      orientation_ = s.nu > 0 ? 1 : -1;
      return;
    }
    for (int k = 0; k < 3; ++k) {
      if (std::abs(s.normal[k]) > 1e-10) {
        orientation_ = s.normal[k] > 0 ? 1 : -1;
        return;
      }
    }
  } catch (const GeometryError&) {
    // a degenerate centre keeps the raw orientation; sample-level calls will report it
  }
}

// ---------------------------------------------------------------------------
// Pointwise geometry

Vec3d frame_derivative(const SpaceParams<double>& space, const Vec3d& p, const Vec3d& dp, const Vec3d& w,
                       const Vec3d& dw) {
  Vec3d out = to_frame(space, p, dw);
  out[2] += space.tau * (dp.y() * w.x() - dp.x() * w.y());
  return out;
}

Vec3d push_forward(const SampleGeometry& s, const Vec2d& c) { return c[0] * s.tu + c[1] * s.tv; }

Vec2d pull_back(const SpaceParams<double>& space, const SampleGeometry& s, const Vec3d& w) {
  const Vec2d rhs(frame_inner(space, w, s.tu), frame_inner(space, w, s.tv));
  return s.first.m.inverse() * rhs;
}

SampleGeometry evaluate(const SurfacePatch& patch, double u, double v) {
  const SpaceParams<double>& sp = patch.space();
  SampleGeometry s;
  s.u = u;
  s.v = v;
  s.jet = patch.jet(u, v);
  const Jet& j = s.jet;
  s.tu = to_frame(sp, j.p, j.fu);
  s.tv = to_frame(sp, j.p, j.fv);
  s.first.m = gram(sp, s.tu, s.tv);
  s.first.epsilon = classify(s.first.m, u, v);
  const double eps = s.first.epsilon;

  // unit normal from the wedge of the tangents
  const Vec3d m = wedge_frame(sp, s.tu, s.tv);
  const double q = frame_inner(sp, m, m);
  const double r = std::sqrt(std::abs(q));
  if (r < 1e-12) {
    throw GeometryError(ErrorKind::DegenerateInducedMetric, "normal has zero length at " + where(u, v));
  }
  const double sigma = patch.orientation();
  s.normal = sigma * m / r;
  s.nu = eps * frame_inner(sp, s.normal, kE3);
  s.t = kE3 - s.nu * s.normal;
  s.gtt = frame_inner(sp, s.t, s.t);
  s.jt = wedge_frame(sp, s.normal, s.t);

  // Weingarten: S X = −∇̃_X N, with ∂N from the jet and the frame connection
  const Vec3d tu_u = frame_derivative(sp, j.p, j.fu, j.fu, j.fuu);
  const Vec3d tv_u = frame_derivative(sp, j.p, j.fu, j.fv, j.fuv);
  const Vec3d tu_v = frame_derivative(sp, j.p, j.fv, j.fu, j.fuv);
  const Vec3d tv_v = frame_derivative(sp, j.p, j.fv, j.fv, j.fvv);
  const auto normal_derivative = [&](const Vec3d& dm) -> Vec3d {
    return sigma * (dm / r - m * frame_inner(sp, m, dm) / (q * r));
  };
  const Vec3d dn_u = normal_derivative(wedge_frame(sp, tu_u, s.tv) + wedge_frame(sp, s.tu, tv_u));
  const Vec3d dn_v = normal_derivative(wedge_frame(sp, tu_v, s.tv) + wedge_frame(sp, s.tu, tv_v));
  const Vec3d su = -(dn_u + connection_term(sp, s.tu, s.normal));
  const Vec3d sv = -(dn_v + connection_term(sp, s.tv, s.normal));
  s.s_coord.basis = Basis::coordinate;
  s.s_coord.m.col(0) = pull_back(sp, s, su);
  s.s_coord.m.col(1) = pull_back(sp, s, sv);

  if (std::abs(s.gtt) >= 1e-8) {
    Mat2d b;
    b.col(0) = pull_back(sp, s, s.t);
    b.col(1) = pull_back(sp, s, s.jt);
    s.s_adapted = ShapeOperator2x2{b.inverse() * s.s_coord.m * b, Basis::adapted};
  }

  s.mean = 0.5 * s.s_coord.m.trace();
  const double ambient_k =
      frame_inner(sp, curvature_frame(sp, s.tu, s.tv, s.tv), s.tu) / s.first.m.determinant();
  s.k_ext = ambient_k + eps * s.s_coord.m.determinant();
  return s;
}

FirstFundamentalForm induced_metric(const SurfacePatch& patch, double u, double v) {
  const Jet j = patch.jet(u, v);
  const auto& sp = patch.space();
  FirstFundamentalForm f;
  f.m = gram(sp, to_frame(sp, j.p, j.fu), to_frame(sp, j.p, j.fv));
  f.epsilon = classify(f.m, u, v);
  return f;
}

TangentVector<double> unit_normal(const SurfacePatch& patch, double u, double v) {
  const SampleGeometry s = evaluate(patch, u, v);
  return {s.jet.p, from_frame(patch.space(), s.jet.p, s.normal)};
}

double angle_function(const SurfacePatch& patch, double u, double v) { return evaluate(patch, u, v).nu; }

TangentVector<double> tangent_part_T(const SurfacePatch& patch, double u, double v) {
  const SampleGeometry s = evaluate(patch, u, v);
  return {s.jet.p, from_frame(patch.space(), s.jet.p, s.t)};
}

TangentVector<double> tangent_rotation_J(const SurfacePatch& patch, double u, double v, const Vec3d& x) {
  const auto& sp = patch.space();
  const SampleGeometry s = evaluate(patch, u, v);
  const Vec3d xf = to_frame(sp, s.jet.p, x);
  if (std::abs(frame_inner(sp, xf, s.normal)) > 1e-8 * (1 + xf.cwiseAbs().maxCoeff())) {
    throw GeometryError(ErrorKind::InvalidParams, "vector is not tangent to the patch at " + where(u, v));
  }
  return {s.jet.p, from_frame(sp, s.jet.p, wedge_frame(sp, s.normal, xf))};
}

ShapeOperator2x2 shape_operator(const SurfacePatch& patch, double u, double v, Basis basis) {
  const SampleGeometry s = evaluate(patch, u, v);
  if (basis == Basis::coordinate) return s.s_coord;
  if (!s.s_adapted) {
    throw GeometryError(ErrorKind::DegenerateAdaptedFrame, "g(T,T) vanishes at " + where(u, v));
  }
  return *s.s_adapted;
}

double mean_curvature(const SurfacePatch& patch, double u, double v) { return evaluate(patch, u, v).mean; }

double gaussian_curvature(const SurfacePatch& patch, double u, double v, CurvatureMethod method, double h) {
  if (method == CurvatureMethod::extrinsic) return evaluate(patch, u, v).k_ext;
  return brioschi(metric_jet(patch, u, v, h));
}

const char* to_string(Basis basis) noexcept { return basis == Basis::adapted ? "adapted" : "coordinate"; }

// ---------------------------------------------------------------------------
// Intrinsic side

MetricJet metric_jet(const SurfacePatch& patch, double u, double v, double h) {
  if (!patch.domain().contains(u, v, patch.margin() + 2 * h)) {
    throw GeometryError(ErrorKind::OutOfDomain, "metric stencil leaves the domain at " + where(u, v));
  }
  const auto& sp = patch.space();
  const auto first = [&](double uu, double vv) -> Mat2d {
    const Jet j = patch.jet(uu, vv);
    return gram(sp, to_frame(sp, j.p, j.fu), to_frame(sp, j.p, j.fv));
  };
  MetricJet mj;
  mj.g = first(u, v);
  mj.gu.setZero();
  mj.gv.setZero();
  mj.guu.setZero();
  mj.gvv.setZero();
  mj.guv.setZero();
  for (int a = 0; a < 5; ++a) {
    const double da = (a - 2) * h;
    const Mat2d along_u = a == 2 ? mj.g : first(u + da, v);
    const Mat2d along_v = a == 2 ? mj.g : first(u, v + da);
    mj.gu += kD1[a] * along_u;
    mj.gv += kD1[a] * along_v;
    mj.guu += kD2[a] * along_u;
    mj.gvv += kD2[a] * along_v;
    for (int b = 0; b < 5; ++b) {
      if (kD1[a] != 0 && kD1[b] != 0) mj.guv += kD1[a] * kD1[b] * first(u + da, v + (b - 2) * h);
    }
  }
  mj.gu /= 12 * h;
  mj.gv /= 12 * h;
  mj.guu /= 12 * h * h;
  mj.gvv /= 12 * h * h;
  mj.guv /= 144 * h * h;
  return mj;
}

double brioschi(const MetricJet& mj) {
  const double E = mj.g(0, 0), F = mj.g(0, 1), G = mj.g(1, 1);
  const double Eu = mj.gu(0, 0), Ev = mj.gv(0, 0);
  const double Fu = mj.gu(0, 1), Fv = mj.gv(0, 1);
  const double Gu = mj.gu(1, 1), Gv = mj.gv(1, 1);
  const double Evv = mj.gvv(0, 0), Guu = mj.guu(1, 1), Fuv = mj.guv(0, 1);
  Eigen::Matrix3d a, b;
  a << -0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev,
       Fv - 0.5 * Gu, E, F,
       0.5 * Gv, F, G;
  b << 0, 0.5 * Ev, 0.5 * Gu,
       0.5 * Ev, E, F,
       0.5 * Gu, F, G;
  const double det = E * G - F * F;
  return (a.determinant() - b.determinant()) / (det * det);
}

std::array<Mat2d, 2> induced_christoffel(const MetricJet& mj) {
  const Mat2d ginv = mj.g.inverse();
  const Mat2d* dg[2] = {&mj.gu, &mj.gv};
  std::array<Mat2d, 2> gamma;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Vec2d lowered;
      for (int l = 0; l < 2; ++l) lowered[l] = 0.5 * ((*dg[i])(l, j) + (*dg[j])(l, i) - (*dg[l])(i, j));
      const Vec2d raised = ginv * lowered;
      gamma[0](i, j) = raised[0];
      gamma[1](i, j) = raised[1];
    }
  }
  return gamma;
}

// ---------------------------------------------------------------------------
// Reports

Stat summarize(const std::vector<double>& values) {
  Stat st;
  double sum = 0;
  for (double x : values) {
    if (std::isnan(x)) continue;
    if (st.count == 0) st.min = st.max = x;
    st.min = std::min(st.min, x);
    st.max = std::max(st.max, x);
    sum += x;
    ++st.count;
  }
  st.mean = st.count ? sum / st.count : std::numeric_limits<double>::quiet_NaN();
  return st;
}

GeometryReport analyze(const SurfacePatch& patch, const Grid& grid, double h) {
  GeometryReport rep;
  rep.label = patch.label();
  rep.grid = grid;
  std::vector<SampleGeometry> samples;
  samples.reserve(static_cast<std::size_t>(grid.nu) * grid.nv);
  bool adapted = true;
  for (int jv = 0; jv < grid.nv; ++jv) {
    for (int iu = 0; iu < grid.nu; ++iu) {
      const double u = grid.u_at(patch.domain(), iu), v = grid.v_at(patch.domain(), jv);
      try {
        samples.push_back(evaluate(patch, u, v));
      } catch (const GeometryError& e) {
        char where[96];
        std::snprintf(where, sizeof where, "sample (%d,%d) at u=%.6g v=%.6g: ", iu, jv, u, v);
        std::string msg = e.what();
        const std::string prefix = std::string(to_string(e.kind())) + ": ";
        if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
        throw GeometryError(e.kind(), where + msg);
      }
      adapted = adapted && samples.back().s_adapted.has_value();
    }
  }
  rep.summary.basis = adapted ? Basis::adapted : Basis::coordinate;

  std::vector<double> nus, hs, kes, kis;
  int eps = samples.empty() ? 0 : samples.front().first.epsilon;
  for (const SampleGeometry& s : samples) {
    SampleRecord r;
    r.u = s.u;
    r.v = s.v;
    r.nu = s.nu;
    r.H = s.mean;
    r.K_ext = s.k_ext;
    try {
      r.K_int = brioschi(metric_jet(patch, s.u, s.v, h));
    } catch (const GeometryError& e) {
      if (e.kind() != ErrorKind::OutOfDomain) throw;
      r.K_int = std::numeric_limits<double>::quiet_NaN();
      ++rep.summary.skipped;
    }
    r.eps = s.first.epsilon;
    r.S = adapted ? s.s_adapted->m : s.s_coord.m;
    r.T = from_frame(patch.space(), s.jet.p, s.t);
    if (r.eps != eps) eps = 0;
    nus.push_back(r.nu);
    hs.push_back(r.H);
    kes.push_back(r.K_ext);
    kis.push_back(r.K_int);
    rep.records.push_back(r);
  }
  rep.summary.nu = summarize(nus);
  rep.summary.H = summarize(hs);
  rep.summary.K_ext = summarize(kes);
  rep.summary.K_int = summarize(kis);
  rep.summary.eps = eps;
  rep.summary.samples = static_cast<int>(rep.records.size());
  return rep;
}

}  // namespace h3
