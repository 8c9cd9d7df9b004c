#include <doctest.h>

#include "qdot/model.hpp"

#include <cmath>

using namespace qdot;

TEST_CASE("unit conversions round-trip") {
  Material mat = Material::gaas();
  for (Unit u : {Unit::nm, Unit::mev, Unit::tesla, Unit::per_m2}) {
    for (double v : {1e-3, 0.7, 42.0, 9.9e14}) {
      double nat = to_natural(v, u, mat);
      CHECK(from_natural(nat, u, mat) == doctest::Approx(v).epsilon(1e-14));
    }
  }
  // GaAs reference factors
  CHECK(to_natural(10.0, Unit::nm, mat) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(to_natural(12.0, Unit::mev, mat) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(to_natural(7.0, Unit::tesla, mat) == doctest::Approx(1.0).epsilon(1e-14));
  // one electron per (10 nm)^2 is one per natural area unit
  CHECK(to_natural(1e16, Unit::per_m2, mat) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("unit tags parse") {
  CHECK(parse_unit("nm") == Unit::nm);
  CHECK(parse_unit("meV") == Unit::mev);
  CHECK(parse_unit("T") == Unit::tesla);
  CHECK(parse_unit("m^-2") == Unit::per_m2);
  CHECK_THROWS_AS(parse_unit("furlong"), std::invalid_argument);
}

TEST_CASE("grid integrates the disc area exactly") {
  for (GridSpacing sp : {GridSpacing::uniform, GridSpacing::graded}) {
    for (int m : {64, 512}) {
      RadialGrid g = build_grid(3.0, m, sp);
      double area = g.weights.sum();
      CHECK(area == doctest::Approx(M_PI * 9.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("grid integrates low powers of r") {
  // int_{disc} r^p dx = 2 pi R^{p+2} / (p+2)
  const double R = 2.5;
  for (GridSpacing sp : {GridSpacing::uniform, GridSpacing::graded}) {
    RadialGrid g = build_grid(R, 512, sp);
    for (int p = 0; p <= 3; ++p) {
      VectorXd f = g.nodes.array().pow(double(p));
      double exact = 2.0 * M_PI * std::pow(R, p + 2) / (p + 2);
      CHECK(g.integrate(f) == doctest::Approx(exact).epsilon(1e-8));
    }
  }
}

TEST_CASE("grid geometry accessors") {
  RadialGrid g = build_grid(4.0, 128);
  CHECK(g.size() == 129);
  CHECK(g.nodes(0) == 0.0);
  CHECK(g.nodes(128) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(g.weights.minCoeff() >= 0.0);
  for (Eigen::Index i = 0; i < g.size(); ++i)
    CHECK(g.cell_width(i) == doctest::Approx(4.0 / 128).epsilon(1e-12));
  CHECK(g.same_as(build_grid(4.0, 128)));
  CHECK_FALSE(g.same_as(build_grid(4.0, 256)));
  CHECK_FALSE(g.same_as(build_grid(4.0, 128, GridSpacing::graded)));
  CHECK_THROWS_AS(build_grid(-1.0, 128), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(1.0, 8), std::invalid_argument);
}

TEST_CASE("graded grid concentrates nodes at the origin") {
  RadialGrid g = build_grid(1.0, 100, GridSpacing::graded);
  // r = R t^2: first interior node well inside the uniform spacing
  CHECK(g.nodes(1) < 0.5 / 100.0);
  for (Eigen::Index i = 1; i < g.size(); ++i) CHECK(g.nodes(i) > g.nodes(i - 1));
}

TEST_CASE("potential shapes") {
  PotentialSpec q = PotentialSpec::quadratic();
  CHECK(q(1.5) == doctest::Approx(2.25).epsilon(1e-15));
  CHECK(q.derivative(1.5) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(q.is_quadratic());

  PotentialSpec h = PotentialSpec::homogeneous(4.0);
  CHECK(h(2.0) == doctest::Approx(16.0).epsilon(1e-15));
  CHECK(h.derivative(2.0) == doctest::Approx(32.0).epsilon(1e-15));
  CHECK_FALSE(h.is_quadratic());
  CHECK_THROWS_AS(PotentialSpec::homogeneous(0.5), std::invalid_argument);

  PotentialSpec t = PotentialSpec::tabulated({0.0, 1.0, 2.0}, {0.0, 1.0, 4.0});
  CHECK(t(0.5) == doctest::Approx(0.5).epsilon(1e-15));   // linear interpolation
  CHECK(t(1.5) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(t(4.0) == doctest::Approx(16.0).epsilon(1e-12));  // r^2 continuation
  CHECK_THROWS_AS(PotentialSpec::tabulated({0.0, 1.0}, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(PotentialSpec::tabulated({1.0, 0.5}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("dot parameter validation") {
  DotParams p;
  p.n_electrons = 3;
  p.coupling = 0.5;
  CHECK_NOTHROW(p.validate());
  CHECK(p.v_ext(2.0) == doctest::Approx(2.0).epsilon(1e-15));
  p.n_electrons = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.n_electrons = 3;
  p.coupling = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.coupling = 1.0;
  p.b_field = -0.1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("density mass and L1 distance") {
  RadialGrid g = build_grid(5.0, 200);
  RadialDensity a{g, VectorXd::Constant(g.size(), 2.0)};
  CHECK(a.mass() == doctest::Approx(2.0 * M_PI * 25.0).epsilon(1e-10));
  RadialDensity b{g, VectorXd::Constant(g.size(), 1.5)};
  CHECK(l1_distance(a, b) == doctest::Approx(0.5 * M_PI * 25.0).epsilon(1e-10));
  CHECK(l1_distance(a, a) == 0.0);
  RadialDensity c{build_grid(5.0, 100), VectorXd::Zero(101)};
  CHECK_THROWS_AS(l1_distance(a, c), std::invalid_argument);
}
