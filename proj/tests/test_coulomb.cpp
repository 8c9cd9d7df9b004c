#include <doctest.h>

#include "oracles.hpp"
#include "qdot/coulomb.hpp"

#include <cmath>
#include <random>

using namespace qdot;

TEST_CASE("complete elliptic integral") {
  CHECK(coulomb::ellip_k(0.0) == doctest::Approx(M_PI / 2.0).epsilon(1e-15));
  // K(m = 1/2) reference value
  CHECK(coulomb::ellip_k(0.5) == doctest::Approx(1.8540746773013719).epsilon(1e-14));
  CHECK(coulomb::ellip_k(0.999) > coulomb::ellip_k(0.9));
}

TEST_CASE("angular kernel limits and symmetry") {
  for (double r : {0.2, 1.0, 3.7}) {
    CHECK(coulomb::angular_kernel(r, 0.0) == doctest::Approx(2.0 * M_PI / r).epsilon(1e-14));
    for (double rp : {0.5, 2.0})
      CHECK(coulomb::angular_kernel(r, rp) == coulomb::angular_kernel(rp, r));
  }
  // far apart, the angular average tends to 2 pi / max(r, r')
  CHECK(coulomb::angular_kernel(100.0, 0.1) ==
        doctest::Approx(2.0 * M_PI / 100.0).epsilon(1e-4));
}

TEST_CASE("diagonal cell average matches adaptive quadrature") {
  for (double h : {0.05, 0.01}) {
    double lib = coulomb::diagonal_cell_average(1.0, h);
    double ora = oracles::kernel_cell_average(1.0, h);
    CHECK(lib == doctest::Approx(ora).epsilon(1e-6));
  }
}

TEST_CASE("kernel table structure") {
  RadialGrid g = build_grid(3.0, 128);
  auto t = coulomb::build_kernel(g);
  for (Eigen::Index i = 1; i < g.size(); i += 13)
    for (Eigen::Index j = 1; j < g.size(); j += 17) {
      CHECK(t.k(i, j) == t.k(j, i));
      CHECK(t.k(i, j) > 0.0);
    }
  // the r' = 0 column is exactly 2 pi / r
  for (Eigen::Index i = 1; i < g.size(); i += 11)
    CHECK(t.k(i, 0) == doctest::Approx(2.0 * M_PI / g.nodes(i)).epsilon(1e-14));
}

TEST_CASE("Coulomb energy of a Gaussian against adaptive quadrature") {
  RadialGrid g = build_grid(8.0, 1024);
  auto t = coulomb::build_kernel(g);
  auto rho_f = [](double r) { return std::exp(-r * r) / M_PI; };  // mass 1
  RadialDensity rho{g, g.nodes.unaryExpr([&](double r) { return rho_f(r); })};
  CHECK(rho.mass() == doctest::Approx(1.0).epsilon(1e-10));
  double d_lib = coulomb::coulomb_energy(rho, t);
  double d_ora = oracles::coulomb_energy_adaptive(rho_f, 8.0);
  CHECK(d_lib == doctest::Approx(d_ora).epsilon(1e-5));
  CHECK(d_lib > 0.0);
}

TEST_CASE("monopole far field") {
  // narrow Gaussian of mass 1: Phi(r) -> 1/r at r >> width
  const double w = 0.1;
  RadialGrid g = build_grid(2.0, 2048);
  auto t = coulomb::build_kernel(g);
  RadialDensity rho{g, g.nodes.unaryExpr([&](double r) {
                      return std::exp(-r * r / (w * w)) / (M_PI * w * w);
                    })};
  VectorXd phi = coulomb::coulomb_potential(rho, t);
  Eigen::Index i_far = g.size() / 2;  // r = 1.0 = 10 widths
  // in-plane multipole series: Phi = (1/r)(1 + <a^2>/(4 r^2) + ...), and the
  // mean square radius of this profile is w^2
  double r = g.nodes(i_far);
  CHECK(phi(i_far) ==
        doctest::Approx((1.0 / r) * (1.0 + 0.25 * w * w / (r * r))).epsilon(1e-4));
  CHECK(phi(i_far) == doctest::Approx(1.0 / r).epsilon(3e-3));  // monopole limit
}

TEST_CASE("uniform disc far field") {
  const double R = 1.0, n = 13.0;
  RadialGrid g = build_grid(5.0 * R, 2000);
  auto t = coulomb::build_kernel(g);
  RadialDensity rho{g, g.nodes.unaryExpr([&](double r) {
                      return r <= R ? n / (M_PI * R * R) : 0.0;
                    })};
  VectorXd phi = coulomb::coulomb_potential(rho, t);
  // uniform disc: <a^2> = R^2/2; the quadrupole term is still 0.5% at 5R.
  // compare against the quadrature mass, since the sharp edge is resolved
  // only to one cell
  double r = g.nodes(g.size() - 1);
  double m = rho.mass();
  double expect = (m / r) * (1.0 + 0.125 * R * R / (r * r) +
                             (9.0 / 64.0) * 0.3333333333333333 * std::pow(R / r, 4));
  CHECK(phi(g.size() - 1) == doctest::Approx(expect).epsilon(1e-3));
  CHECK(phi(g.size() - 1) == doctest::Approx(n / r).epsilon(1e-2));  // monopole limit
}

TEST_CASE("quadratic form is positive and bilinear") {
  RadialGrid g = build_grid(4.0, 256);
  auto t = coulomb::build_kernel(g);
  RadialDensity zero{g, VectorXd::Zero(g.size())};
  CHECK(coulomb::coulomb_energy(zero, t) == 0.0);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(0.1, 1.0);
  // random smooth densities: mixtures of radial Gaussian shells
  auto bump = [&](VectorXd& v) {
    v.setZero();
    for (int s = 0; s < 3; ++s) {
      double c = 2.5 * uni(rng), w = 0.3 + uni(rng), amp = uni(rng);
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        double d = (g.nodes(i) - c) / w;
        v(i) += amp * std::exp(-d * d);
      }
    }
  };
  for (int trial = 0; trial < 5; ++trial) {
    VectorXd a(g.size()), b(g.size());
    bump(a);
    bump(b);
    RadialDensity ra{g, a}, rb{g, b}, diff{g, a - b};
    CHECK(coulomb::coulomb_energy(ra, t) > 0.0);
    // positive-type kernel: D(a - b, a - b) >= 0
    CHECK(coulomb::coulomb_energy(diff, t) >= -1e-12);
    // polarization: D(a-b) = D(a) + D(b) - 2 B(a, b) with B from the sum
    RadialDensity sum{g, a + b};
    double cross = 0.5 * (coulomb::coulomb_energy(sum, t) - coulomb::coulomb_energy(ra, t) -
                          coulomb::coulomb_energy(rb, t));
    CHECK(coulomb::coulomb_energy(diff, t) ==
          doctest::Approx(coulomb::coulomb_energy(ra, t) + coulomb::coulomb_energy(rb, t) -
                          2.0 * cross)
              .epsilon(1e-10));
  }
}

TEST_CASE("refinement convergence of the quadratic form") {
  auto rho_f = [](double r) { return (1.0 + r) * std::exp(-r * r); };
  double ref = oracles::coulomb_energy_adaptive(rho_f, 7.0);
  double prev_err = 0.0;
  for (int m : {256, 512, 1024, 2048}) {
    RadialGrid g = build_grid(7.0, m);
    auto t = coulomb::build_kernel(g);
    RadialDensity rho{g, g.nodes.unaryExpr([&](double r) { return rho_f(r); })};
    double err = std::abs(coulomb::coulomb_energy(rho, t) - ref);
    if (m > 256) CHECK(err <= prev_err);
    prev_err = err;
  }
  CHECK(prev_err <= 1e-6 * std::abs(ref));
}

TEST_CASE("angular harmonics of the kernel") {
  RadialGrid g = build_grid(3.0, 200);
  auto t = coulomb::build_kernel(g);
  auto harm = coulomb::harmonic_tables(t, 3);
  REQUIRE(harm.size() == 4);
  // p = 0 reuses the table
  CHECK(harm[0](50, 120) == doctest::Approx(t.k(50, 120) / (2.0 * M_PI)).epsilon(1e-12));
  // direct periodic quadrature oracle for p = 2 at an off-diagonal pair;
  // compare the difference to p = 0 so the cell-average correction shared by
  // all harmonics drops out
  double r = g.nodes(50), rp = g.nodes(120);
  double direct = oracles::integrate(
      [&](double th) {
        return (std::cos(2.0 * th) - 1.0) /
               (2.0 * M_PI * std::sqrt(r * r + rp * rp - 2.0 * r * rp * std::cos(th)));
      },
      0.0, 2.0 * M_PI, 1e-12);
  CHECK(harm[2](50, 120) - harm[0](50, 120) == doctest::Approx(direct).epsilon(1e-8));
  // harmonics decay with p away from the diagonal
  CHECK(std::abs(harm[3](20, 150)) < std::abs(harm[1](20, 150)));
}
