#pragma once
// Radial algebra for the 3D Coulomb kernel |x-y|^-1 restricted to the plane:
// the angular average in closed form via the complete elliptic integral,
// the convolution rho * |x|^-1 and the quadratic form D(rho, rho).

#include "qdot/model.hpp"

namespace qdot::coulomb {

using Eigen::MatrixXd;

// Complete elliptic integral of the first kind K(m), parameter m = k^2,
// by the arithmetic-geometric mean iteration.
double ellip_k(double m);

// Angular integral k(r, r') = int_0^{2pi} (r^2 + r'^2 - 2 r r' cos t)^{-1/2} dt
//                           = 4 / (r + r') K(4 r r' / (r + r')^2).
// Diverges logarithmically at r = r'; k(r, 0) = 2 pi / r exactly.
double angular_kernel(double r, double rp);

// Dense table of the angular kernel on a grid.  Off-diagonal entries are
// point values; the diagonal holds the analytic average of the logarithmic
// singularity over the local quadrature cell, so that convolutions against
// the grid weights integrate the singularity correctly.
struct RadialKernelTable {
  RadialGrid grid;
  MatrixXd k;
};

RadialKernelTable build_kernel(const RadialGrid& grid);

// Cell average (1/h) int k(r, r') dr' over r' in [r-h/2, r+h/2]; this is
// what build_kernel places on the diagonal.
double diagonal_cell_average(double r, double h);

// Phi(r_i) = (rho * |x|^-1)(r_i)
VectorXd coulomb_potential(const RadialDensity& rho, const RadialKernelTable& table);

// D(rho, rho) = 1/2 int int rho |x-y|^-1 rho
double coulomb_energy(const RadialDensity& rho, const RadialKernelTable& table);

// Angular Fourier components of the kernel,
//   A_p(r, r') = (1/2pi) int_0^{2pi} cos(p t) (r^2 + r'^2 - 2 r r' cos t)^{-1/2} dt,
// for p = 0 .. p_max.  A_0 = k / 2pi reuses the table; higher harmonics add
// the smooth correction (1/2pi) int (cos pt - 1) / d dt by periodic
// quadrature.  Used for exchange terms and LLL matrix elements.
std::vector<MatrixXd> harmonic_tables(const RadialKernelTable& table, int p_max,
                                      int n_theta = 1024);

}  // namespace qdot::coulomb
