#pragma once
// Closed-form and semi-analytic spectra of a 2D dot in a magnetic field:
// Fock-Darwin levels, Landau levels, center-of-mass (Kohn) spectrum, the
// maximum density droplet, Taut's two-electron Coulomb solutions and the
// inverse-square / harmonic-interaction exact energies.

#include "qdot/model.hpp"

#include <functional>
#include <vector>

namespace qdot::spectra {

// Omega = sqrt(B^2/4 + omega^2); degenerate when both vanish.
double omega_big(double b_field, double omega);

// (2k+|l|+1) Omega - l B / 2
double fock_darwin_energy(int k, int l, double b_field, double omega);

// Fock-Darwin level index n = k + (|l|-l)/2
int fdl_index(int k, int l);

// (n + 1/2) B, requires B > 0
double landau_energy(int n, double b_field);

// Landau-level degeneracy per unit area, B / (2 pi)
double landau_degeneracy_density(double b_field);

struct SpectrumLine {
  int k = 0;
  int l = 0;
  double energy = 0.0;
  int angular_momentum = 0;
  int fdl = 0;
};

// The `count` lowest Fock-Darwin lines, sorted by (energy, l, k).
// Requires omega > 0 (at omega = 0 each level is infinitely degenerate).
std::vector<SpectrumLine> fock_darwin_spectrum(double b_field, double omega, int count);

// Center-of-mass spectrum for a quadratic trap: identical to the one-body
// Fock-Darwin list for every N (Kohn's theorem), so N only gets validated.
std::vector<SpectrumLine> cm_spectrum(int n_electrons, double b_field, double omega, int count);

// Associated Laguerre L_k^a(x), integer a >= 0, by upward recurrence in k.
double laguerre(int k, int a, double x);

// Normalized radial part of the Fock-Darwin orbital:
//   R(r) = c r^|l| exp(-Omega r^2 / 2) L_k^|l|(Omega r^2),
// with int R(r)^2 2 pi r dr = 1.
std::function<double(double)> fock_darwin_orbital(int k, int l, double omega_big_value);

// |psi^L_{0,l}(r)|^2 for the lowest-Landau-level orbital (Omega = B/2),
// evaluated in log space so large l stays finite.
double lll_orbital_density(int l, double b_field, double r);

struct MddState {
  int n_electrons = 0;
  double b_field = 0.0;
  long total_angular_momentum = 0;  // N(N-1)/2
  RadialDensity density;
};

MddState mdd_state(int n_electrons, double b_field);
MddState mdd_state(int n_electrons, double b_field, const RadialGrid& grid);

// One terminating-polynomial solution of the N = 2 relative Coulomb problem.
// The energy satisfies E = Omega E'/4 - m B / 2 with the stored E'; the
// termination analysis pins E' = 4(n + |m| + 1), see taut_termination.
struct TautSolution {
  int n = 0;        // polynomial degree / series cutoff
  int m = 0;
  double omega_big = 0.0;
  double b_field = 0.0;
  double e_prime = 0.0;
  double energy = 0.0;
  std::vector<double> coefficients;  // a_0 ... a_n
};

struct TautScan {
  std::vector<TautSolution> solutions;
  std::vector<double> rejected_omegas;  // roots with Omega < omega (no real B)
};

// Value of the first non-terminating coefficient a_{n+1}(Omega); its zeros
// are the admissible Omega.  The three-term recursion comes from inserting
// exp(-rho^2/2) rho^|m| P(rho), rho = sqrt(Omega/2) r, into the radial
// equation of the relative Hamiltonian (i grad - A/2)^2 + omega^2 r^2 / 4 + 1/r:
//   a_{nu+1} (nu+1)(nu+2|m|+1) = kappa a_nu + [2(nu+|m|) - eps'] a_{nu-1}
// with kappa = sqrt(2/Omega) and eps' = 2(n+|m|+1) at termination.
double taut_termination(int n, int m, double omega_big_value);

// All admissible Omega roots in [omega_lo, omega_hi] at fixed trap omega.
// B is recovered from Omega^2 = B^2/4 + omega^2; roots below omega are
// reported in rejected_omegas.
TautScan taut_find_solutions(int n, int m, double omega, double omega_lo, double omega_hi);

// Evaluate the (unnormalized) Taut radial wavefunction u(r) and the exact
// residual H u - E u of the radial equation; used for self-checks.
double taut_radial_value(const TautSolution& s, double omega, double r);
double taut_radial_residual(const TautSolution& s, double omega, double r);

// [2n + sqrt(m^2 + alpha) + 1] Omega - m B / 2 for W = alpha / r^2, alpha >= 0.
double inverse_square_spectrum(int n, int m, double alpha, double b_field, double omega);

// Ground state energy of the harmonic-interaction model, exactly as printed:
//   Omega + (N-1)(N-2) Omega_0 / 2 - N(N+1) B / 4 + N(N-1) W_0,
// Omega_0 = sqrt(Omega^2 - N beta^2).  Requires omega >= sqrt(N) beta.
double harmonic_interaction_energy(int n_electrons, double b_field, double omega,
                                   double beta, double w0);

}  // namespace qdot::spectra
