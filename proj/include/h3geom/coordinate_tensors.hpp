#pragma once

// Coordinate-basis connection and curvature computed purely from central
// differences of coordinate_metric(). Nothing here uses the frame tables in
// ambient.hpp, so the two routes can be diffed against each other. Works for
// every κ.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <functional>

#include "h3geom/ambient.hpp"

namespace h3 {

/// Γ[k](i,j) = Γ^k_ij
template <typename Scalar>
using Christoffel = std::array<Mat3<Scalar>, 3>;

template <typename Scalar>
using VectorField = std::function<Vec3<Scalar>(const Point<Scalar>&)>;

/// R[l][k](i,j) = R^l_kij, with R(∂_i,∂_j)∂_k = R^l_kij ∂_l.
template <typename Scalar>
using Riemann = std::array<std::array<Mat3<Scalar>, 3>, 3>;

// All differences use the five-point stencil (error O(h⁴)); plain central
// differences nested twice cannot hold 1e-6 on the curvature once τ ~ 2.
struct StepPolicy {
  /// first derivatives: h = max(floor, rel·|coordinate|)
  double first = 1e-5;
  /// steps of the nested differences used for second derivatives
  double second = 1e-3;

  template <typename Scalar>
  static Scalar scaled(double base, Scalar coordinate) {
    using std::abs;
    const Scalar h = Scalar(base) * abs(coordinate);
    return h > Scalar(base) ? h : Scalar(base);
  }
};

namespace detail {

/// f'(0) from f(±h), f(±2h).
template <typename T, typename Scalar>
T five_point(const T& p1, const T& m1, const T& p2, const T& m2, Scalar h) {
  return (Scalar(8) * (p1 - m1) - (p2 - m2)) / (Scalar(12) * h);
}

}  // namespace detail

/// dg[k] = ∂_k g
template <typename Scalar>
std::array<Mat3<Scalar>, 3> metric_gradient(const SpaceParams<Scalar>& params, const Id<Point<Scalar>>& p,
                                            double step = StepPolicy{}.first) {
  std::array<Mat3<Scalar>, 3> dg;
  for (int k = 0; k < 3; ++k) {
    const Scalar h = StepPolicy::scaled(step, p[k]);
    const auto at = [&](Scalar t) {
      Point<Scalar> q = p;
      q[k] += t;
      return coordinate_metric(params, q);
    };
    dg[k] = detail::five_point<Mat3<Scalar>>(at(h), at(-h), at(2 * h), at(-2 * h), h);
  }
  return dg;
}

namespace detail {

template <typename Scalar>
Mat3<Scalar> inverse_metric(const SpaceParams<Scalar>& params, const Id<Point<Scalar>>& p) {
  using std::abs;
  const Mat3<Scalar> g = coordinate_metric(params, p);
  const Scalar det = g.determinant();
  if (abs(det) < Scalar(1e-12) * (Scalar(1) + g.cwiseAbs().maxCoeff())) {
    throw GeometryError(ErrorKind::SingularMetric, "coordinate metric is numerically singular");
  }
  return g.inverse();
}

template <typename Scalar>
Christoffel<Scalar> christoffel_from(const Mat3<Scalar>& ginv, const std::array<Mat3<Scalar>, 3>& dg) {
  Christoffel<Scalar> gamma;
  for (int m = 0; m < 3; ++m) gamma[m].setZero();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      // lowered symbol Γ_kij = ½(∂_i g_kj + ∂_j g_ki − ∂_k g_ij)
      Vec3<Scalar> lowered;
      for (int k = 0; k < 3; ++k) {
        lowered[k] = Scalar(0.5) * (dg[i](k, j) + dg[j](k, i) - dg[k](i, j));
      }
      const Vec3<Scalar> raised = ginv * lowered;
      for (int m = 0; m < 3; ++m) gamma[m](i, j) = raised[m];
    }
  }
  return gamma;
}

}  // namespace detail

template <typename Scalar>
Christoffel<Scalar> christoffel_coords(const SpaceParams<Scalar>& params, const Id<Point<Scalar>>& p,
                                       double step = StepPolicy{}.first) {
  return detail::christoffel_from(detail::inverse_metric(params, p), metric_gradient(params, p, step));
}

/// Γ(X,Y)^k = Γ^k_ij X^i Y^j
template <typename Scalar>
Vec3<Scalar> contract(const Christoffel<Scalar>& gamma, const Id<Vec3<Scalar>>& x, const Id<Vec3<Scalar>>& y) {
  return Vec3<Scalar>(x.dot(gamma[0] * y), x.dot(gamma[1] * y), x.dot(gamma[2] * y));
}

/// Derivative of a coordinate vector field along X at p (central difference on the flow line p + sX).
template <typename Scalar>
Vec3<Scalar> directional_derivative(const Id<VectorField<Scalar>>& field,
                                    const Point<Scalar>& p, const Id<Vec3<Scalar>>& x,
                                    double step = StepPolicy{}.first) {
  using std::abs;
  const Scalar scale = x.cwiseAbs().maxCoeff();
  if (scale == Scalar(0)) return Vec3<Scalar>::Zero();
  const Scalar h = StepPolicy::scaled(step, p.cwiseAbs().maxCoeff()) / scale;
  return detail::five_point<Vec3<Scalar>>(field(p + h * x), field(p - h * x), field(p + 2 * h * x),
                                         field(p - 2 * h * x), h);
}

/// ∇_X Y for a coordinate vector field Y, via Christoffel symbols from the metric.
template <typename Scalar>
Vec3<Scalar> covariant_derivative_coords(const SpaceParams<Scalar>& params, const Id<Point<Scalar>>& p,
                                         const Id<Vec3<Scalar>>& x,
                                         const Id<VectorField<Scalar>>& field,
                                         double step = StepPolicy{}.first) {
  return directional_derivative<Scalar>(field, p, x, step) + contract(christoffel_coords(params, p, step), x, field(p));
}

/// [X,Y] = X(Y) − Y(X) for coordinate vector fields.
template <typename Scalar>
Vec3<Scalar> lie_bracket(const Id<VectorField<Scalar>>& x_field,
                         const Id<VectorField<Scalar>>& y_field, const Point<Scalar>& p,
                         double step = StepPolicy{}.first) {
  return directional_derivative(y_field, p, x_field(p), step) - directional_derivative(x_field, p, y_field(p), step);
}

/// R^l_kij = ∂_i Γ^l_jk − ∂_j Γ^l_ik + Γ^l_im Γ^m_jk − Γ^l_jm Γ^m_ik,
/// with ∂Γ from nested differences of the metric.
template <typename Scalar>
Riemann<Scalar> riemann_coords(const SpaceParams<Scalar>& params, const Id<Point<Scalar>>& p,
                               const StepPolicy& steps = StepPolicy{}) {
  const Christoffel<Scalar> gamma =
      detail::christoffel_from(detail::inverse_metric(params, p), metric_gradient(params, p, steps.second));
  std::array<Christoffel<Scalar>, 3> dgamma;  // dgamma[i] = ∂_i Γ
  for (int i = 0; i < 3; ++i) {
    const Scalar h = StepPolicy::scaled(steps.second, p[i]);
    const auto at = [&](Scalar t) {
      Point<Scalar> q = p;
      q[i] += t;
      return detail::christoffel_from(detail::inverse_metric(params, q), metric_gradient(params, q, steps.second));
    };
    const Christoffel<Scalar> p1 = at(h), m1 = at(-h), p2 = at(2 * h), m2 = at(-2 * h);
    for (int l = 0; l < 3; ++l) dgamma[i][l] = detail::five_point<Mat3<Scalar>>(p1[l], m1[l], p2[l], m2[l], h);
  }
  Riemann<Scalar> r;
  for (int l = 0; l < 3; ++l) {
    for (int k = 0; k < 3; ++k) {
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          Scalar v = dgamma[i][l](j, k) - dgamma[j][l](i, k);
          for (int m = 0; m < 3; ++m) {
            v += gamma[l](i, m) * gamma[m](j, k) - gamma[l](j, m) * gamma[m](i, k);
          }
          r[l][k](i, j) = v;
        }
      }
    }
  }
  return r;
}

/// R(X,Y)Z in coordinates.
template <typename Scalar>
Vec3<Scalar> apply(const Riemann<Scalar>& r, const Id<Vec3<Scalar>>& x, const Id<Vec3<Scalar>>& y, const Id<Vec3<Scalar>>& z) {
  Vec3<Scalar> out = Vec3<Scalar>::Zero();
  for (int l = 0; l < 3; ++l) {
    for (int k = 0; k < 3; ++k) {
      out[l] += z[k] * x.dot(r[l][k] * y);
    }
  }
  return out;
}

/// Sectional curvature from the finite-difference Riemann tensor; valid for any κ.
template <typename Scalar>
Scalar sectional_curvature_coords(const SpaceParams<Scalar>& params, const Id<Point<Scalar>>& p,
                                  const Id<Vec3<Scalar>>& x, const Id<Vec3<Scalar>>& y,
                                  const StepPolicy& steps = StepPolicy{}) {
  using std::abs;
  const Mat3<Scalar> g = coordinate_metric(params, p);
  const Scalar gxx = x.dot(g * x);
  const Scalar gyy = y.dot(g * y);
  const Scalar gxy = x.dot(g * y);
  const Scalar q = gxx * gyy - gxy * gxy;
  const Scalar scale = abs(gxx * gyy) + gxy * gxy;
  if (abs(q) <= Scalar(1e-12) * (scale > Scalar(1) ? scale : Scalar(1))) {
    throw GeometryError(ErrorKind::DegeneratePlane, "span{X,Y} is degenerate");
  }
  const Riemann<Scalar> r = riemann_coords(params, p, steps);
  return apply(r, x, y, y).dot(g * x) / q;
}

}  // namespace h3
