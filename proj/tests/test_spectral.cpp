#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "stab/spectral.hpp"

using namespace stab;

TEST_CASE("strip nodes are Gauss-Lobatto points") {
  // n = 17 keeps the minimum-size precondition while containing the
  // canonical 5-point pattern at indexes 0, 4, 8, 12, 16
  const SpectralGrid g = make_grid(Geometry::Strip, 17);
  CHECK(g.nodes(0) == doctest::Approx(1.0));
  CHECK(g.nodes(4) == doctest::Approx(std::sqrt(2.0) / 2.0));
  CHECK(g.nodes(8) == doctest::Approx(0.0));
  CHECK(g.nodes(12) == doctest::Approx(-std::sqrt(2.0) / 2.0));
  CHECK(g.nodes(16) == doctest::Approx(-1.0));
}

TEST_CASE("strip quadrature weights sum to the interval length") {
  for (int n : {16, 33, 64}) {
    const SpectralGrid g = make_grid(Geometry::Strip, n);
    CHECK(g.weights.sum() == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("strip differentiation is exact on low-degree polynomials") {
  const SpectralGrid g = make_grid(Geometry::Strip, 32);
  for (int m = 0; m <= 6; ++m) {
    RealVector p(g.n), dp(g.n), d2p(g.n), d4p(g.n);
    for (int j = 0; j < g.n; ++j) {
      const double y = g.nodes(j);
      p(j) = std::pow(y, m);
      dp(j) = m >= 1 ? m * std::pow(y, m - 1) : 0.0;
      d2p(j) = m >= 2 ? m * (m - 1) * std::pow(y, m - 2) : 0.0;
      d4p(j) = m >= 4 ? m * (m - 1) * (m - 2) * (m - 3) * std::pow(y, m - 4)
                      : 0.0;
    }
    CHECK((g.d1 * p - dp).cwiseAbs().maxCoeff() <= 1e-7);
    CHECK((g.d2 * p - d2p).cwiseAbs().maxCoeff() <= 1e-7);
    CHECK((g.d4 * p - d4p).cwiseAbs().maxCoeff() <= 1e-6);
  }
}

TEST_CASE("half-space box covers [0, Y] with wall clustering") {
  const double y_top = 10.0;
  const SpectralGrid g = make_grid(Geometry::HalfSpace, 64, y_top);
  CHECK(g.nodes(0) == doctest::Approx(y_top));
  CHECK(g.nodes(g.n - 1) == doctest::Approx(0.0));
  // descending order
  for (int j = 1; j < g.n; ++j) CHECK(g.nodes(j) < g.nodes(j - 1));
}

TEST_CASE("half-space differentiation handles decaying functions") {
  const SpectralGrid g = make_grid(Geometry::HalfSpace, 96, 10.0);
  RealVector f(g.n), df(g.n), d2f(g.n);
  for (int j = 0; j < g.n; ++j) {
    const double y = g.nodes(j);
    f(j) = std::exp(-y);
    df(j) = -std::exp(-y);
    d2f(j) = std::exp(-y);
  }
  CHECK((g.d1 * f - df).cwiseAbs().maxCoeff() <= 1e-5);
  CHECK((g.d2 * f - d2f).cwiseAbs().maxCoeff() <= 1e-5);
}

TEST_CASE("half-space quadrature integrates exponential decay") {
  const SpectralGrid g = make_grid(Geometry::HalfSpace, 96, 10.0);
  double acc = 0.0;
  for (int j = 0; j < g.n; ++j) acc += g.weights(j) * std::exp(-2.0 * g.nodes(j));
  // integral over [0, Y] of e^{-2y} = (1 - e^{-2Y}) / 2
  CHECK(acc == doctest::Approx(0.5 * (1.0 - std::exp(-20.0))).epsilon(1e-8));
}

TEST_CASE("make_grid validates its arguments") {
  CHECK_THROWS_AS((void)make_grid(Geometry::Strip, 8), std::invalid_argument);
  CHECK_THROWS_AS((void)make_grid(Geometry::HalfSpace, 64, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)make_grid(Geometry::HalfSpace, 64, -2.0),
                  std::invalid_argument);
}

TEST_CASE("inner product is the weighted L2 pairing") {
  const SpectralGrid g = make_grid(Geometry::Strip, 48);
  const Complex i(0.0, 1.0);
  ComplexVector f(g.n), h(g.n);
  for (int j = 0; j < g.n; ++j) {
    const double y = g.nodes(j);
    f(j) = y + i * y * y;
    h(j) = 1.0 - i * y;
  }
  // integral over [-1,1] of (y + i y^2)(1 + i y) = i*2/3 + i*(2/3) + (-2/3)... computed directly:
  // (y + i y^2)(1 + i y) = y + i y^2 + i y^2 - y^3 = y - y^3 + 2 i y^2
  const Complex expected(0.0, 4.0 / 3.0);
  CHECK(std::abs(inner_product(f, h, g) - expected) <= 1e-12);
  // conjugate symmetry <f, h> = conj(<h, f>)
  CHECK(std::abs(inner_product(f, h, g) - std::conj(inner_product(h, f, g))) <=
        1e-14);
  // componentwise vector pairing
  const Complex pair = vector_inner_product({f, h}, {f, h}, g);
  CHECK(pair.imag() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(pair.real() > 0.0);
}

TEST_CASE("sample evaluates on the nodes") {
  const SpectralGrid g = make_grid(Geometry::Strip, 16);
  const ComplexVector v = sample(g, [](double y) { return y * y; });
  for (int j = 0; j < g.n; ++j)
    CHECK(v(j).real() == doctest::Approx(g.nodes(j) * g.nodes(j)));
}
