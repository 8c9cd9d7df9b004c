#pragma once
// Independent numeric oracles used only by the tests: a conservative
// finite-difference radial eigensolver (Sturm-sequence bisection on the
// symmetrized tridiagonal matrix, Richardson-extrapolated), and adaptive
// Simpson quadrature.  Deliberately implemented with different methods than
// the library under test.

#include <functional>
#include <vector>

namespace oracles {

// index-th (0-based, ascending) eigenvalue of the symmetric tridiagonal
// matrix with diagonal a and off-diagonal b, by Sturm counts + bisection
double tridiag_eigenvalue(const std::vector<double>& a, const std::vector<double>& b,
                          int index);

// index-th eigenvalue of  c_kin * ( -u'' - u'/r ) + v(r) u  on (0, r_max),
// natural (zero-flux) inner boundary via a half-offset grid, Dirichlet at
// r_max; m cells.  v must include any centrifugal term.
double radial_eigenvalue(double c_kin, const std::function<double(double)>& v,
                         double r_max, int m, int index);

// same, Richardson-extrapolated from m and 2m cells (h^2 scheme -> h^4)
double radial_eigenvalue_rich(double c_kin, const std::function<double(double)>& v,
                              double r_max, int m, int index);

// adaptive Simpson on [a, b]
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-10, int max_depth = 40);

// cell average (1/h) int_{r-h/2}^{r+h/2} k(r, r') dr' of the angular Coulomb
// kernel, with the log singularity removed by a square-root substitution;
// adaptive quadrature throughout
double kernel_cell_average(double r, double h, double tol = 1e-9);

// D(rho, rho) for a radial density by nested adaptive quadrature
double coulomb_energy_adaptive(const std::function<double(double)>& rho, double r_max,
                               double tol = 1e-8);

}  // namespace oracles
