#include <doctest.h>

#include <vector>

#include "h3geom/ambient.hpp"
#include "h3geom/coordinate_tensors.hpp"
#include "test_support.hpp"

using namespace h3;
using h3::testing::max_abs;
using h3::testing::Sampler;
using V3 = Vec3<double>;
using Field = std::function<V3(const Point<double>&)>;

namespace {

const std::vector<double> kTaus{0.5, 1.0, 2.0};
const std::vector<int> kDeltas{-1, 1};

V3 unit(int i) { return V3::Unit(i); }

}  // namespace

TEST_CASE("metric_eval reproduces the coordinate expression") {
  SUBCASE("dz² coefficient at the origin is delta") {
    const auto s = make_space(1, 2.0);
    CHECK(metric_eval(s, V3::Zero(), unit(2), unit(2)) == doctest::Approx(1.0));
  }
  SUBCASE("zero vector") {
    Sampler rng;
    for (int delta : kDeltas) {
      const auto s = make_space(delta, 0.7, 0.3);
      CHECK(metric_eval(s, rng.vec(-0.5, 0.5), V3::Zero(), rng.vec()) == 0.0);
    }
  }
  SUBCASE("g(dx,dx) = 1 + delta tau² y²") {
    const auto s = make_space(1, 1.0);
    CHECK(metric_eval(s, V3(0, 1, 0), unit(0), unit(0)) == doctest::Approx(2.0));
  }
  SUBCASE("symmetric and bilinear") {
    Sampler rng;
    for (int delta : kDeltas) {
      const auto s = make_space(delta, 1.3, -0.4);
      for (int n = 0; n < 20; ++n) {
        const V3 p = rng.vec(-0.8, 0.8);
        const V3 a = rng.vec(), b = rng.vec(), c = rng.vec();
        const double lambda = rng.uniform(-2, 2);
        CHECK(metric_eval(s, p, a, b) == doctest::Approx(metric_eval(s, p, b, a)).epsilon(1e-13));
        CHECK(metric_eval(s, p, V3(a + lambda * c), b) ==
              doctest::Approx(metric_eval(s, p, a, b) + lambda * metric_eval(s, p, c, b)).epsilon(1e-12));
      }
    }
  }
  SUBCASE("tangent vectors must share a base point") {
    const auto s = make_space(1, 1.0);
    CHECK_THROWS_AS(metric_eval(s, TangentVector<double>{V3::Zero(), unit(0)}, TangentVector<double>{unit(1), unit(0)}),
                    GeometryError);
  }
  SUBCASE("singular conformal factor") {
    const auto s = make_space(1, 1.0, -4.0);
    try {
      metric_eval(s, V3(1, 0, 0), unit(0), unit(0));
      FAIL("expected SingularConformalFactor");
    } catch (const GeometryError& e) {
      CHECK(e.kind() == ErrorKind::SingularConformalFactor);
    }
  }
  SUBCASE("invalid delta") { CHECK_THROWS_AS(make_space(0, 1.0), GeometryError); }
}

TEST_CASE("frame_at") {
  SUBCASE("E1 at (0,2,0)") {
    const auto f = frame_at(make_space(1, 1.0), V3(0, 2, 0));
    CHECK(max_abs(f.e1.comps - V3(1, 0, -2)) == 0.0);
  }
  SUBCASE("E2 at (3,0,0)") {
    const auto f = frame_at(make_space(-1, 1.0), V3(3, 0, 0));
    CHECK(max_abs(f.e2.comps - V3(0, 1, 3)) == 0.0);
  }
  SUBCASE("E3 is the fiber direction everywhere") {
    Sampler rng;
    for (double tau : kTaus) {
      CHECK(max_abs(frame_at(make_space(1, tau), rng.vec()).e3.comps - unit(2)) == 0.0);
    }
  }
  SUBCASE("orthonormal with signature (1, -delta, delta)") {
    Sampler rng;
    for (int delta : kDeltas) {
      for (double tau : kTaus) {
        const auto s = make_space(delta, tau);
        double worst = 0;
        for (int n = 0; n < 100; ++n) {
          const auto f = frame_at(s, rng.vec());
          Eigen::Matrix3d gram;
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) gram(i, j) = metric_eval(s, f[i], f[j]);
          const Eigen::Matrix3d expected = Eigen::Vector3d(1, -delta, delta).asDiagonal();
          worst = std::max(worst, max_abs(gram - expected));
        }
        CHECK(worst <= 1e-12);
      }
    }
  }
  SUBCASE("kappa != 0 is rejected") {
    try {
      frame_at(make_space(1, 1.0, 0.5), V3::Zero());
      FAIL("expected UnsupportedKappa");
    } catch (const GeometryError& e) {
      CHECK(e.kind() == ErrorKind::UnsupportedKappa);
    }
  }
  SUBCASE("frame components round-trip") {
    Sampler rng;
    const auto s = make_space(-1, 0.9);
    for (int n = 0; n < 10; ++n) {
      const V3 p = rng.vec(), w = rng.vec();
      CHECK(max_abs(from_frame(s, p, to_frame(s, p, w)) - w) <= 1e-14);
    }
  }
}

TEST_CASE("wedge") {
  const V3 e1 = unit(0), e2 = unit(1), e3 = unit(2);
  SUBCASE("E1 ∧ E2 = delta E3") {
    const auto s = make_space(-1, 1.0);
    CHECK(max_abs(wedge_frame(s, e1, e2) + e3) == 0.0);
  }
  SUBCASE("E2 ∧ E3 = E1") { CHECK(max_abs(wedge_frame(make_space(1, 1.0), e2, e3) - e1) == 0.0); }
  SUBCASE("E1 ∧ E3 = delta E2") {
    for (int delta : kDeltas) CHECK(max_abs(wedge_frame(make_space(delta, 1.0), e1, e3) - delta * e2) == 0.0);
  }
  SUBCASE("antisymmetric, v ∧ v = 0, cyclic triple product") {
    Sampler rng;
    for (int delta : kDeltas) {
      const auto s = make_space(delta, 1.0);
      for (int n = 0; n < 20; ++n) {
        const V3 a = rng.vec(), b = rng.vec(), c = rng.vec();
        CHECK(max_abs(wedge_frame(s, a, b) + wedge_frame(s, b, a)) <= 1e-15);
        CHECK(max_abs(wedge_frame(s, a, a)) == 0.0);
        const double abc = frame_inner(s, wedge_frame(s, a, b), c);
        CHECK(frame_inner(s, wedge_frame(s, b, c), a) == doctest::Approx(abc).epsilon(1e-12));
        CHECK(frame_inner(s, wedge_frame(s, c, a), b) == doctest::Approx(abc).epsilon(1e-12));
      }
    }
  }
  SUBCASE("coordinate form agrees with frame form") {
    Sampler rng;
    const auto s = make_space(1, 1.5);
    const V3 p = rng.vec();
    const TangentVector<double> v{p, rng.vec()}, w{p, rng.vec()};
    const auto vw = wedge(s, v, w);
    CHECK(max_abs(to_frame(s, p, vw.comps) - wedge_frame(s, to_frame(s, p, v.comps), to_frame(s, p, w.comps))) <=
          1e-14);
  }
}

TEST_CASE("connection_frame table") {
  for (int delta : kDeltas) {
    const auto s = make_space(delta, 0.8);
    CHECK(max_abs(connection_frame(s, 3, 2) - delta * 0.8 * unit(0)) == 0.0);
    CHECK(max_abs(connection_frame(s, 2, 3) - delta * 0.8 * unit(0)) == 0.0);
    CHECK(max_abs(connection_frame(s, 1, 1)) == 0.0);
    CHECK(max_abs(connection_frame(s, 1, 3) - 0.8 * unit(1)) == 0.0);
    CHECK(max_abs(connection_frame(s, 2, 1) + 0.8 * unit(2)) == 0.0);
  }
  CHECK_THROWS_AS(connection_frame(make_space(1, 1.0), 0, 1), GeometryError);
}

TEST_CASE("christoffel_coords") {
  Sampler rng;
  SUBCASE("Minkowski space is flat") {
    const auto s = make_space(1, 0.0);
    const auto gamma = christoffel_coords(s, rng.vec());
    for (const auto& g : gamma) CHECK(max_abs(g) <= 1e-12);
  }
  SUBCASE("symmetric in the lower indices") {
    for (int delta : kDeltas) {
      const auto s = make_space(delta, 1.7, 0.2);
      const auto gamma = christoffel_coords(s, rng.vec(-0.5, 0.5));
      for (const auto& g : gamma) CHECK(max_abs(g - g.transpose()) <= 1e-12);
    }
  }
  SUBCASE("∇_E2 E3 in coordinates equals tau E1") {
    const auto s = make_space(1, 1.0);
    const Field e3 = [&](const V3& q) -> V3 { return frame_matrix(s, q).col(2); };
    for (int n = 0; n < 10; ++n) {
      const V3 p = rng.vec();
      const V3 got = covariant_derivative_coords(s, p, frame_matrix(s, p).col(1), e3);
      CHECK(max_abs(got - frame_matrix(s, p).col(0)) <= 1e-7);
    }
  }
  SUBCASE("full connection table matches the closed form") {
    for (int delta : kDeltas) {
      for (double tau : kTaus) {
        const auto s = make_space(delta, tau);
        double worst = 0;
        for (int n = 0; n < 20; ++n) {
          const V3 p = rng.vec();
          const Eigen::Matrix3d m = frame_matrix(s, p);
          for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
              const Field ej = [&, j](const V3& q) -> V3 { return frame_matrix(s, q).col(j); };
              const V3 numeric = covariant_derivative_coords(s, p, V3(m.col(i)), ej);
              worst = std::max(worst, max_abs(to_frame(s, p, numeric) - connection_frame(s, i + 1, j + 1)));
            }
          }
        }
        CHECK(worst <= 1e-7);
      }
    }
  }
}

TEST_CASE("frame brackets and Killing field") {
  Sampler rng;
  for (int delta : kDeltas) {
    for (double tau : kTaus) {
      const auto s = make_space(delta, tau);
      std::array<Field, 3> e;
      for (int i = 0; i < 3; ++i) e[i] = [&, i](const V3& q) -> V3 { return V3(frame_matrix(s, q).col(i)); };
      for (int n = 0; n < 10; ++n) {
        const V3 p = rng.vec();
        CHECK(max_abs(lie_bracket(e[0], e[1], p) - 2 * tau * unit(2)) <= 1e-9);
        CHECK(max_abs(lie_bracket(e[1], e[2], p)) <= 1e-9);
        CHECK(max_abs(lie_bracket(e[2], e[0], p)) <= 1e-9);
        // metric coefficients do not depend on z
        const V3 shifted = p + rng.uniform(-5, 5) * unit(2);
        CHECK(max_abs(coordinate_metric(s, p) - coordinate_metric(s, shifted)) == 0.0);
      }
    }
  }
}

TEST_CASE("∇_X E3 = delta tau X ∧ E3") {
  Sampler rng;
  for (int delta : kDeltas) {
    const auto s = make_space(delta, 1.2);
    const Field e3 = [&](const V3& q) -> V3 { return frame_matrix(s, q).col(2); };
    double worst = 0;
    for (int n = 0; n < 50; ++n) {
      const V3 p = rng.vec();
      const V3 x = rng.vec();
      const V3 lhs = to_frame(s, p, covariant_derivative_coords(s, p, x, e3));
      const V3 rhs = delta * 1.2 * wedge_frame(s, to_frame(s, p, x), unit(2));
      worst = std::max(worst, max_abs(lhs - rhs));
    }
    CHECK(worst <= 1e-7);
  }
}

TEST_CASE("curvature") {
  const V3 e1 = unit(0), e2 = unit(1), e3 = unit(2);
  SUBCASE("tabulated components") {
    for (int delta : kDeltas) {
      for (double tau : kTaus) {
        const auto s = make_space(delta, tau);
        CHECK(max_abs(curvature_frame(s, e1, e2, e1) + 3 * tau * tau * e2) == 0.0);
        CHECK(max_abs(curvature_frame(s, e1, e3, e1) - tau * tau * e3) == 0.0);
        CHECK(max_abs(curvature_frame(s, e2, e3, e2) + delta * tau * tau * e3) == 0.0);
      }
    }
  }
  SUBCASE("tensor formula equals the table on every frame triple") {
    for (int delta : kDeltas) {
      for (double tau : kTaus) {
        const auto s = make_space(delta, tau);
        for (int i = 1; i <= 3; ++i)
          for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k) {
              CHECK(max_abs(curvature_frame(s, unit(i - 1), unit(j - 1), unit(k - 1)) - curvature_table(s, i, j, k)) ==
                    0.0);
            }
      }
    }
  }
  SUBCASE("multilinear expansion on random triples") {
    Sampler rng;
    for (int delta : kDeltas) {
      const auto s = make_space(delta, 1.1);
      for (int n = 0; n < 50; ++n) {
        const V3 x = rng.vec(), y = rng.vec(), z = rng.vec();
        V3 expanded = V3::Zero();
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) expanded += x[i] * y[j] * z[k] * curvature_table(s, i + 1, j + 1, k + 1);
        CHECK(max_abs(curvature_frame(s, x, y, z) - expanded) <= 1e-10);
        CHECK(max_abs(curvature_frame(s, x, x, z)) == 0.0);
      }
    }
  }
  SUBCASE("finite-difference Riemann tensor matches the closed form") {
    Sampler rng;
    for (int delta : kDeltas) {
      for (double tau : kTaus) {
        const auto s = make_space(delta, tau);
        double worst = 0;
        for (int n = 0; n < 10; ++n) {
          const V3 p = rng.vec();
          const auto r = riemann_coords(s, p);
          const Eigen::Matrix3d m = frame_matrix(s, p);
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
              for (int k = 0; k < 3; ++k) {
                const V3 numeric = to_frame(s, p, apply(r, V3(m.col(i)), V3(m.col(j)), V3(m.col(k))));
                worst = std::max(worst, max_abs(numeric - curvature_table(s, i + 1, j + 1, k + 1)));
              }
        }
        CHECK(worst <= 1e-6);
      }
    }
  }
  SUBCASE("Minkowski space has no curvature") {
    const auto s = make_space(-1, 0.0);
    const auto r = riemann_coords(s, V3(0.3, -0.2, 1.0));
    for (const auto& row : r)
      for (const auto& m : row) CHECK(max_abs(m) <= 1e-9);
  }
}

TEST_CASE("sectional_curvature") {
  const V3 e1 = unit(0), e2 = unit(1), e3 = unit(2);
  SUBCASE("vertical plane span{E1,E3}") {
    // R_1313 = delta tau², so K = g(R(E1,E3)E3,E1)/(g11 g33) = -tau²
    const auto s = make_space(1, 1.5);
    CHECK(sectional_curvature(s, V3::Zero(), e1, e3) == doctest::Approx(-2.25));
  }
  SUBCASE("horizontal plane span{E1,E2}") {
    for (int delta : kDeltas) {
      const auto s = make_space(delta, 0.5);
      CHECK(sectional_curvature(s, V3::Zero(), e1, e2) == doctest::Approx(0.75));
    }
  }
  SUBCASE("independent of the basis of the plane") {
    Sampler rng;
    for (int delta : kDeltas) {
      const auto s = make_space(delta, 1.0);
      for (int n = 0; n < 20; ++n) {
        const V3 p = rng.vec(), x = rng.vec(), y = rng.vec();
        const double k = sectional_curvature(s, p, x, y);
        CHECK(sectional_curvature(s, p, V3(2 * x), y) == doctest::Approx(k).epsilon(1e-9));
        CHECK(sectional_curvature(s, p, V3(x + 0.3 * y), V3(-0.7 * x + 1.9 * y)) == doctest::Approx(k).epsilon(1e-9));
      }
    }
  }
  SUBCASE("degenerate plane") {
    const auto s = make_space(1, 1.0);
    // E2 + E3 is null when delta = 1
    CHECK_THROWS_AS(sectional_curvature(s, V3::Zero(), e1, V3(e2 + e3)), GeometryError);
  }
  SUBCASE("finite-difference route agrees for kappa = 0") {
    Sampler rng;
    const auto s = make_space(-1, 0.7);
    for (int n = 0; n < 5; ++n) {
      const V3 p = rng.vec(), x = rng.vec(), y = rng.vec();
      CHECK(sectional_curvature_coords(s, p, x, y) == doctest::Approx(sectional_curvature(s, p, x, y)).epsilon(1e-6));
    }
  }
  SUBCASE("kappa = -4 tau² is a space form") {
    Sampler rng;
    for (int delta : kDeltas) {
      for (double tau : kTaus) {
        const auto s = make_space(delta, tau, -4 * tau * tau);
        double lo = 1e300, hi = -1e300;
        for (int n = 0; n < 20; ++n) {
          const double r = 0.25 / tau;
          const V3 p(rng.uniform(-r, r), rng.uniform(-r, r), rng.uniform(-2, 2));
          const double k = sectional_curvature_coords(s, p, rng.vec(), rng.vec());
          lo = std::min(lo, k);
          hi = std::max(hi, k);
        }
        MESSAGE("delta=" << delta << " tau=" << tau << " K=" << lo << " spread " << hi - lo);
        CHECK(hi - lo <= 1e-6);
      }
    }
  }
}
