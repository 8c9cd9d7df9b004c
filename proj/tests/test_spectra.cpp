#include <doctest.h>

#include "oracles.hpp"
#include "qdot/spectra.hpp"

#include <cmath>
#include <random>

using namespace qdot;
namespace sp = qdot::spectra;

namespace {

// Radial diagonalization oracle for H = (1/2)(i grad - A)^2 + (1/2) w^2 r^2:
// fixed-l sector, k-th eigenvalue.
double fd_oracle(int k, int l, double b, double omega, int cells = 700) {
  double big = sp::omega_big(b, omega);
  auto v = [=](double r) {
    return 0.5 * l * l / (r * r) + 0.5 * big * big * r * r - 0.5 * l * b;
  };
  double r_max = std::sqrt(2.0 * (2 * k + std::abs(l) + 14) / big);
  return oracles::radial_eigenvalue_rich(0.5, v, r_max, cells, k);
}

}  // namespace

TEST_CASE("effective frequency and Fock-Darwin energies") {
  CHECK(sp::omega_big(3.0, 2.0) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(sp::fock_darwin_energy(1, -2, 2.0, 0.0) == doctest::Approx(7.0).epsilon(1e-14));
  CHECK(sp::fock_darwin_energy(0, 3, 4.0, 3.0) ==
        doctest::Approx(4.0 * std::sqrt(13.0) - 6.0).epsilon(1e-14));
  CHECK_THROWS_AS(sp::omega_big(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(sp::fock_darwin_energy(-1, 0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("Fock-Darwin energies match the radial diagonalization oracle") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> ks(0, 3), ls(-3, 3);
  std::uniform_real_distribution<double> bs(0.0, 4.0), ws(0.3, 2.5);
  for (int trial = 0; trial < 12; ++trial) {
    int k = ks(rng), l = ls(rng);
    double b = bs(rng), w = ws(rng);
    double exact = sp::fock_darwin_energy(k, l, b, w);
    CHECK(fd_oracle(k, l, b, w) == doctest::Approx(exact).epsilon(1e-6));
  }
}

TEST_CASE("Landau levels and level index") {
  CHECK(sp::landau_energy(0, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sp::landau_energy(3, 1.0) == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(sp::landau_degeneracy_density(2.0 * M_PI) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sp::fdl_index(0, 5) == 0);
  CHECK(sp::fdl_index(2, -3) == 5);
  CHECK(sp::fdl_index(1, 0) == 1);
  // omega -> 0 degeneration: FD energy equals the Landau level of its index
  for (int k = 0; k <= 3; ++k)
    for (int l = -4; l <= 4; ++l)
      CHECK(sp::fock_darwin_energy(k, l, 1.7, 0.0) ==
            sp::landau_energy(sp::fdl_index(k, l), 1.7));
}

TEST_CASE("spectrum listing is sorted and validated") {
  auto lines = sp::fock_darwin_spectrum(2.0, 1.0, 30);
  REQUIRE(lines.size() == 30);
  for (size_t i = 1; i < lines.size(); ++i) CHECK(lines[i].energy >= lines[i - 1].energy);
  for (const auto& ln : lines) {
    CHECK(ln.energy ==
          doctest::Approx(sp::fock_darwin_energy(ln.k, ln.l, 2.0, 1.0)).epsilon(1e-14));
    CHECK(ln.angular_momentum == ln.l);
    CHECK(ln.fdl == sp::fdl_index(ln.k, ln.l));
  }
  CHECK_THROWS_AS(sp::fock_darwin_spectrum(2.0, 0.0, 10), std::invalid_argument);
}

TEST_CASE("center-of-mass spectrum is independent of N") {
  auto ref = sp::cm_spectrum(1, 2.0, 1.0, 25);
  for (int n : {2, 10, 50, 100}) {
    auto other = sp::cm_spectrum(n, 2.0, 1.0, 25);
    REQUIRE(other.size() == ref.size());
    for (size_t i = 0; i < ref.size(); ++i) {
      CHECK(other[i].k == ref[i].k);
      CHECK(other[i].l == ref[i].l);
      CHECK(other[i].energy == ref[i].energy);  // bitwise
    }
  }
  CHECK_THROWS_AS(sp::cm_spectrum(0, 2.0, 1.0, 5), std::invalid_argument);
}

TEST_CASE("orbitals are normalized and orthogonal") {
  auto r00 = sp::fock_darwin_orbital(0, 0, 1.0);
  CHECK(r00(0.0) == doctest::Approx(std::sqrt(1.0 / M_PI)).epsilon(1e-12));
  for (int k : {0, 1, 2}) {
    auto rk = sp::fock_darwin_orbital(k, 2, 1.3);
    double norm = oracles::integrate(
        [&](double r) { return rk(r) * rk(r) * 2.0 * M_PI * r; }, 0.0, 12.0);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-8));
  }
  auto ra = sp::fock_darwin_orbital(0, 1, 0.8);
  auto rb = sp::fock_darwin_orbital(2, 1, 0.8);
  double overlap = oracles::integrate(
      [&](double r) { return ra(r) * rb(r) * 2.0 * M_PI * r; }, 0.0, 15.0);
  CHECK(std::abs(overlap) <= 1e-8);
}

TEST_CASE("Laguerre recurrence against explicit low orders") {
  for (double x : {0.0, 0.3, 2.7}) {
    CHECK(sp::laguerre(0, 2, x) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sp::laguerre(1, 1, x) == doctest::Approx(2.0 - x).epsilon(1e-14));
    CHECK(sp::laguerre(2, 0, x) ==
          doctest::Approx(1.0 - 2.0 * x + 0.5 * x * x).epsilon(1e-13));
  }
}

TEST_CASE("lowest-level orbital densities") {
  const double b = 1.4;
  for (int l : {0, 3, 40, 200}) {
    double norm = oracles::integrate(
        [&](double r) { return sp::lll_orbital_density(l, b, r) * 2.0 * M_PI * r; }, 0.0,
        std::sqrt(2.0 * (l + 1) / b) + 8.0 / std::sqrt(b));
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::isfinite(sp::lll_orbital_density(l, b, std::sqrt(2.0 * l / b) + 1e-3)));
  }
  // density peaks on the classical ring r = sqrt(2 l / B)
  double peak_r = std::sqrt(2.0 * 3 / b);
  CHECK(sp::lll_orbital_density(3, b, peak_r) >
        sp::lll_orbital_density(3, b, peak_r * 1.2));
}

TEST_CASE("maximum density droplet") {
  auto mdd = sp::mdd_state(10, 1.0);
  CHECK(mdd.total_angular_momentum == 45);
  CHECK(mdd.density.values.maxCoeff() <= 1.05 / (2.0 * M_PI));
  for (int n : {1, 5, 25, 50}) {
    auto st = sp::mdd_state(n, 1.0);
    CHECK(st.density.mass() == doctest::Approx(double(n)).epsilon(1e-8));
  }
}

TEST_CASE("two-electron polynomial solutions") {
  // (n, m) = (1, 0): the termination root is Omega = 1 exactly
  auto scan = sp::taut_find_solutions(1, 0, 0.05, 1e-3, 40.0);
  REQUIRE(scan.solutions.size() >= 1);
  const auto& s = scan.solutions.front();
  CHECK(s.omega_big == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(s.e_prime == doctest::Approx(8.0).epsilon(1e-12));  // 4 (n + |m| + 1)
  CHECK(s.energy ==
        doctest::Approx(0.25 * s.omega_big * s.e_prime - 0.5 * s.m * s.b_field)
            .epsilon(1e-12));
  CHECK(sp::taut_termination(1, 0, s.omega_big) == doctest::Approx(0.0).epsilon(1e-10));
  // residual of the radial equation vanishes along the solution
  for (double r : {0.3, 0.9, 1.7, 2.6})
    CHECK(std::abs(sp::taut_radial_residual(s, 0.05, r)) <= 1e-8);
}

TEST_CASE("solution roots below the trap frequency are rejected") {
  // (n, m) = (1, 1) has its only root at Omega = 1/3 < omega = 0.5
  auto scan = sp::taut_find_solutions(1, 1, 0.5, 1e-3, 40.0);
  CHECK(scan.solutions.empty());
  REQUIRE(scan.rejected_omegas.size() >= 1);
  CHECK(scan.rejected_omegas.front() == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("inverse-square interaction spectrum") {
  // alpha = 0 reduces to the one-body oscillator lines
  for (int n : {0, 1, 3})
    for (int m : {-2, 0, 2})
      CHECK(sp::inverse_square_spectrum(n, m, 0.0, 1.3, 0.7) ==
            doctest::Approx(sp::fock_darwin_energy(n, m, 1.3, 0.7)).epsilon(1e-12));
  // alpha = 3, m = 1: centrifugal index sqrt(1 + 3) = 2
  CHECK(sp::inverse_square_spectrum(0, 1, 3.0, 0.0, 1.0) ==
        doctest::Approx(3.0).epsilon(1e-12));
  CHECK(sp::inverse_square_spectrum(0, 0, 1.0, 2.0, 0.0) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(sp::inverse_square_spectrum(0, 0, -1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("harmonic-interaction ground energy") {
  CHECK(sp::harmonic_interaction_energy(3, 0.0, 1.0, 0.1, 0.0) ==
        doctest::Approx(1.0 + std::sqrt(0.97)).epsilon(1e-14));
  // W0 enters linearly with coefficient N (N - 1)
  double w0 = 0.25;
  CHECK(sp::harmonic_interaction_energy(4, 0.5, 1.0, 0.1, w0) -
            sp::harmonic_interaction_energy(4, 0.5, 1.0, 0.1, 0.0) ==
        doctest::Approx(12.0 * w0).epsilon(1e-13));
  CHECK_THROWS_AS(sp::harmonic_interaction_energy(9, 0.0, 0.2, 0.1, 0.0),
                  std::domain_error);
}
