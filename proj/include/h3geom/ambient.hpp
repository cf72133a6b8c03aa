#pragma once

// Closed-form geometry of the Lorentzian spaces M(κ,τ) with metric
//
//   g = (dx² − δ dy²)/ρ² + δ (dz + τ (y dx − x dy)/ρ)²,   ρ = 1 + κ/4 (x² − δ y²).
//
// The κ = 0 member is the Lorentzian Heisenberg group H₃(τ). Everything
// frame-based (frame, wedge, connection, curvature) is κ = 0 only; the metric
// itself is available for every κ.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <string>
#include <type_traits>

#include "h3geom/errors.hpp"

namespace h3 {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Mat3 = Eigen::Matrix<Scalar, 3, 3>;

// Non-deduced parameter: Scalar comes from SpaceParams, so Eigen expressions
// can be passed where a Vec3 is expected.
template <typename T>
using Id = std::type_identity_t<T>;

template <typename Scalar = double>
struct SpaceParams {
  int delta = 1;
  Scalar tau = Scalar(1);
  Scalar kappa = Scalar(0);

  Scalar d() const { return Scalar(delta); }
  bool heisenberg() const { return kappa == Scalar(0); }
};

template <typename Scalar>
SpaceParams<Scalar> make_space(int delta, Scalar tau, Scalar kappa = Scalar(0)) {
  using std::isfinite;
  if (delta != 1 && delta != -1) {
    throw GeometryError(ErrorKind::InvalidParams, "delta must be +1 or -1, got " + std::to_string(delta));
  }
  if (!isfinite(tau) || !isfinite(kappa)) {
    throw GeometryError(ErrorKind::InvalidParams, "tau and kappa must be finite");
  }
  return SpaceParams<Scalar>{delta, tau, kappa};
}

template <typename Scalar = double>
using Point = Vec3<Scalar>;

// Components are in the coordinate basis (∂x, ∂y, ∂z).
template <typename Scalar = double>
struct TangentVector {
  Point<Scalar> base = Point<Scalar>::Zero();
  Vec3<Scalar> comps = Vec3<Scalar>::Zero();
};

template <typename Scalar = double>
struct Frame {
  TangentVector<Scalar> e1, e2, e3;

  const TangentVector<Scalar>& operator[](int i) const { return i == 0 ? e1 : (i == 1 ? e2 : e3); }
};

namespace detail {

template <typename Scalar>
void require_heisenberg(const SpaceParams<Scalar>& params, const char* op) {
  if (!params.heisenberg()) {
    throw GeometryError(ErrorKind::UnsupportedKappa, std::string(op) + " is only available for kappa = 0");
  }
}

template <typename Scalar>
void require_same_base(const TangentVector<Scalar>& v, const TangentVector<Scalar>& w) {
  if (v.base != w.base) {
    throw GeometryError(ErrorKind::BaseMismatch, "tangent vectors are based at different points");
  }
}

inline int frame_slot(int index) {
  if (index < 1 || index > 3) {
    throw GeometryError(ErrorKind::InvalidParams, "frame index must be 1, 2 or 3");
  }
  return index - 1;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Metric

template <typename Scalar>
Scalar conformal_factor(const SpaceParams<Scalar>& params, const Id<Point<Scalar>>& p) {
  using std::abs;
  const Scalar rho = Scalar(1) + params.kappa / Scalar(4) * (p.x() * p.x() - params.d() * p.y() * p.y());
  if (abs(rho) < Scalar(1e-12)) {
    throw GeometryError(ErrorKind::SingularConformalFactor, "1 + (kappa/4)(x^2 - delta y^2) vanishes");
  }
  return rho;
}

/// Coordinate matrix g_ij of the ambient metric at p.
template <typename Scalar>
Mat3<Scalar> coordinate_metric(const SpaceParams<Scalar>& params, const Id<Point<Scalar>>& p) {
  const Scalar rho = conformal_factor(params, p);
  const Vec3<Scalar> fiber_form(params.tau * p.y() / rho, -params.tau * p.x() / rho, Scalar(1));
  Mat3<Scalar> g = params.d() * fiber_form * fiber_form.transpose();
  g(0, 0) += Scalar(1) / (rho * rho);
  g(1, 1) -= params.d() / (rho * rho);
  return g;
}

template <typename Scalar>
Scalar metric_eval(const SpaceParams<Scalar>& params, const Id<Point<Scalar>>& p, const Id<Vec3<Scalar>>& v,
                   const Id<Vec3<Scalar>>& w) {
  return v.dot(coordinate_metric(params, p) * w);
}

template <typename Scalar>
Scalar metric_eval(const SpaceParams<Scalar>& params, const TangentVector<Scalar>& v,
                   const TangentVector<Scalar>& w) {
  detail::require_same_base(v, w);
  return metric_eval(params, v.base, v.comps, w.comps);
}

// ---------------------------------------------------------------------------
// Orthonormal frame E1 = ∂x − τy ∂z, E2 = ∂y + τx ∂z, E3 = ∂z.
// g(E1,E1) = 1, g(E2,E2) = −δ, g(E3,E3) = δ.

/// Columns are E1, E2, E3 in coordinates.
template <typename Scalar>
Mat3<Scalar> frame_matrix(const SpaceParams<Scalar>& params, const Id<Point<Scalar>>& p) {
  detail::require_heisenberg(params, "frame_matrix");
  Mat3<Scalar> m = Mat3<Scalar>::Identity();
  m(2, 0) = -params.tau * p.y();
  m(2, 1) = params.tau * p.x();
  return m;
}

/// Coordinate components -> frame components.
template <typename Scalar>
Vec3<Scalar> to_frame(const SpaceParams<Scalar>& params, const Id<Point<Scalar>>& p, const Id<Vec3<Scalar>>& coords) {
  detail::require_heisenberg(params, "to_frame");
  return Vec3<Scalar>(coords.x(), coords.y(),
                      coords.z() + params.tau * (p.y() * coords.x() - p.x() * coords.y()));
}

/// Frame components -> coordinate components.
template <typename Scalar>
Vec3<Scalar> from_frame(const SpaceParams<Scalar>& params, const Id<Point<Scalar>>& p, const Id<Vec3<Scalar>>& frame) {
  return frame_matrix(params, p) * frame;
}

template <typename Scalar>
Frame<Scalar> frame_at(const SpaceParams<Scalar>& params, const Id<Point<Scalar>>& p) {
  const Mat3<Scalar> m = frame_matrix(params, p);
  return Frame<Scalar>{{p, m.col(0)}, {p, m.col(1)}, {p, m.col(2)}};
}

/// Diagonal of the metric in the frame: (1, −δ, δ).
template <typename Scalar>
Vec3<Scalar> frame_signature(const SpaceParams<Scalar>& params) {
  return Vec3<Scalar>(Scalar(1), -params.d(), params.d());
}

template <typename Scalar>
Scalar frame_inner(const SpaceParams<Scalar>& params, const Id<Vec3<Scalar>>& a, const Id<Vec3<Scalar>>& b) {
  return a.cwiseProduct(frame_signature(params)).dot(b);
}

// ---------------------------------------------------------------------------
// Cross product: trilinear extension of
//   E1∧E2 = δE3,  E2∧E3 = E1,  E1∧E3 = δE2.

template <typename Scalar>
Vec3<Scalar> wedge_frame(const SpaceParams<Scalar>& params, const Id<Vec3<Scalar>>& a, const Id<Vec3<Scalar>>& b) {
  const Scalar d = params.d();
  return Vec3<Scalar>(a.y() * b.z() - a.z() * b.y(),
                      d * (a.x() * b.z() - a.z() * b.x()),
                      d * (a.x() * b.y() - a.y() * b.x()));
}

template <typename Scalar>
TangentVector<Scalar> wedge(const SpaceParams<Scalar>& params, const TangentVector<Scalar>& v,
                            const TangentVector<Scalar>& w) {
  detail::require_same_base(v, w);
  const Point<Scalar>& p = v.base;
  const Vec3<Scalar> f = wedge_frame(params, to_frame(params, p, v.comps), to_frame(params, p, w.comps));
  return {p, from_frame(params, p, f)};
}

// ---------------------------------------------------------------------------
// Levi-Civita connection in the frame. The frame is left-invariant, so the
// coefficients are constants.

/// Frame components of ∇_{E_i} E_j, indices 1..3.
template <typename Scalar>
Vec3<Scalar> connection_frame(const SpaceParams<Scalar>& params, int i, int j) {
  detail::require_heisenberg(params, "connection_frame");
  const int a = detail::frame_slot(i);
  const int b = detail::frame_slot(j);
  const Scalar t = params.tau;
  const Scalar dt = params.d() * params.tau;
  const Vec3<Scalar> e1(Scalar(1), Scalar(0), Scalar(0));
  const Vec3<Scalar> e2(Scalar(0), Scalar(1), Scalar(0));
  const Vec3<Scalar> e3(Scalar(0), Scalar(0), Scalar(1));
  const Vec3<Scalar> zero = Vec3<Scalar>::Zero();
  const std::array<std::array<Vec3<Scalar>, 3>, 3> table{{
      {{zero, Vec3<Scalar>(t * e3), Vec3<Scalar>(t * e2)}},
      {{Vec3<Scalar>(-t * e3), zero, Vec3<Scalar>(dt * e1)}},
      {{Vec3<Scalar>(t * e2), Vec3<Scalar>(dt * e1), zero}},
  }};
  return table[a][b];
}

/// Zeroth-order part of ∇_X Y for frame components: Σ X^i Y^j ∇_{E_i} E_j.
/// The full derivative of a field adds the derivative of Y's frame components along X.
template <typename Scalar>
Vec3<Scalar> connection_term(const SpaceParams<Scalar>& params, const Id<Vec3<Scalar>>& x, const Id<Vec3<Scalar>>& y) {
  Vec3<Scalar> out = Vec3<Scalar>::Zero();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      out += x[i] * y[j] * connection_frame(params, i + 1, j + 1);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Curvature, convention R(X,Y) = ∇_X∇_Y − ∇_Y∇_X − ∇_[X,Y].

/// Tensorial closed form, all arguments in frame components.
template <typename Scalar>
Vec3<Scalar> curvature_frame(const SpaceParams<Scalar>& params, const Id<Vec3<Scalar>>& x, const Id<Vec3<Scalar>>& y,
                             const Id<Vec3<Scalar>>& z) {
  detail::require_heisenberg(params, "curvature");
  const Scalar d = params.d();
  const Scalar t2 = params.tau * params.tau;
  const Vec3<Scalar> e3(Scalar(0), Scalar(0), Scalar(1));
  const Scalar gyz = frame_inner(params, y, z);
  const Scalar gxz = frame_inner(params, x, z);
  // g(·, E3) = δ·(third frame component)
  const Scalar xe = d * x.z();
  const Scalar ye = d * y.z();
  const Scalar ze = d * z.z();
  const Vec3<Scalar> isotropic = gyz * x - gxz * y;
  const Vec3<Scalar> fiber = ye * ze * x - xe * ze * y + (xe * gyz - ye * gxz) * e3;
  // τ² factored out last: on frame vectors the bracket is an exact integer vector,
  // so the result rounds exactly like the tabulated components
  return t2 * (Scalar(3) * isotropic - d * Scalar(4) * fiber);
}

template <typename Scalar>
TangentVector<Scalar> curvature(const SpaceParams<Scalar>& params, const TangentVector<Scalar>& x,
                                const TangentVector<Scalar>& y, const TangentVector<Scalar>& z) {
  detail::require_same_base(x, y);
  detail::require_same_base(x, z);
  const Point<Scalar>& p = x.base;
  const Vec3<Scalar> r = curvature_frame(params, to_frame(params, p, x.comps), to_frame(params, p, y.comps),
                                         to_frame(params, p, z.comps));
  return {p, from_frame(params, p, r)};
}

/// R(E_i,E_j)E_k (indices 1..3) assembled from the three tabulated components
///   R(E1,E2)E1 = −3τ²E2,  R(E1,E3)E1 = τ²E3,  R(E2,E3)E2 = −δτ²E3
/// and the algebraic symmetries of the curvature tensor.
template <typename Scalar>
Vec3<Scalar> curvature_table(const SpaceParams<Scalar>& params, int i, int j, int k) {
  detail::require_heisenberg(params, "curvature_table");
  const int a = detail::frame_slot(i);
  const int b = detail::frame_slot(j);
  const int c = detail::frame_slot(k);
  const Scalar d = params.d();
  const Scalar t2 = params.tau * params.tau;
  const Vec3<Scalar> sig = frame_signature(params);
  // R_abab = g(R(E_a,E_b)E_a, E_b) for a < b
  Mat3<Scalar> rabab = Mat3<Scalar>::Zero();
  rabab(0, 1) = -Scalar(3) * t2 * sig[1];
  rabab(0, 2) = t2 * sig[2];
  rabab(1, 2) = -d * t2 * sig[2];
  rabab(1, 0) = rabab(0, 1);
  rabab(2, 0) = rabab(0, 2);
  rabab(2, 1) = rabab(1, 2);

  Vec3<Scalar> out = Vec3<Scalar>::Zero();
  if (a == b) return out;
  if (c == a) {
    out[b] = rabab(a, b) / sig[b];
  } else if (c == b) {
    out[a] = -rabab(a, b) / sig[a];
  }
  return out;
}

/// Sectional curvature g(R(X,Y)Y,X) / (g(X,X)g(Y,Y) − g(X,Y)²).
template <typename Scalar>
Scalar sectional_curvature(const SpaceParams<Scalar>& params, const Id<Point<Scalar>>& p, const Id<Vec3<Scalar>>& x,
                           const Id<Vec3<Scalar>>& y) {
  using std::abs;
  const Vec3<Scalar> fx = to_frame(params, p, x);
  const Vec3<Scalar> fy = to_frame(params, p, y);
  const Scalar gxx = frame_inner(params, fx, fx);
  const Scalar gyy = frame_inner(params, fy, fy);
  const Scalar gxy = frame_inner(params, fx, fy);
  const Scalar q = gxx * gyy - gxy * gxy;
  const Scalar scale = abs(gxx * gyy) + gxy * gxy;
  if (abs(q) <= Scalar(1e-12) * (scale > Scalar(1) ? scale : Scalar(1))) {
    throw GeometryError(ErrorKind::DegeneratePlane, "span{X,Y} is degenerate");
  }
  return frame_inner(params, curvature_frame(params, fx, fy, fy), fx) / q;
}

}  // namespace h3
