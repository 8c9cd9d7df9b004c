#pragma once
// Square-lattice discretization of the planar magnetic kinetic operator
// (1/2)(i grad - A)^2 in symmetric gauge, with Peierls bond phases whose
// plaquette sum reproduces the continuum flux B h^2, Dirichlet walls, and a
// Lanczos eigensolver (full reorthogonalization) for the low spectrum.

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

namespace qdot::lattice {

using Eigen::VectorXcd;
using Eigen::VectorXd;

struct MagneticLattice {
  int n = 64;              // n x n sites
  double half_width = 8.0; // box [-L, L]^2, sites strictly inside (Dirichlet)
  double b_field = 0.0;

  double spacing() const { return 2.0 * half_width / (n + 1); }
  double coord(int i) const { return -half_width + (i + 1) * spacing(); }
};

// H = kinetic + diag(site_potential); site_potential may be empty (bare).
struct MagneticOperator {
  MagneticLattice lat;
  VectorXd diagonal;          // 2/h^2 + potential per site
  VectorXcd phase_x, phase_y; // bond phases, hop (i,j) -> (i+1,j) / (i,j+1)

  Eigen::Index dim() const { return (Eigen::Index)lat.n * lat.n; }
  void apply(const VectorXcd& x, VectorXcd& y) const;
};

MagneticOperator build_operator(const MagneticLattice& lat,
                                const std::function<double(double, double)>& potential);

// All converged eigenvalues strictly below `bound`, ascending.  Lanczos with
// full reorthogonalization and a deterministic start vector; `max_steps`
// caps the Krylov dimension.
std::vector<double> eigenvalues_below(const MagneticOperator& op, double bound,
                                      int max_steps = 500, double tol = 1e-9);

// Smallest eigenvalue only; converges even when the low end of the spectrum
// is a near-degenerate Landau cluster.
double lowest_eigenvalue(const MagneticOperator& op, int max_steps = 500,
                         double tol = 1e-9);

// Ground energy of the bare kinetic operator; the continuum value is B/2,
// the difference calibrates the lattice zero point.
double bare_ground_energy(const MagneticLattice& lat, int max_steps = 500);

}  // namespace qdot::lattice
