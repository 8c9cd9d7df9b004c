#pragma once
// Classical point-charge configurations: minimize
//   E^P[x_1..x_N] = sum_i V(x_i) + sum_{i<j} |x_i - x_j|^{-1}
// over N planar positions, and compare with the continuum classical energy.

#include "qdot/coulomb.hpp"
#include "qdot/model.hpp"

namespace qdot::charges {

using Eigen::MatrixX2d;

struct PointConfiguration {
  MatrixX2d positions;       // N x 2, natural length units
  double energy = 0.0;
  double gradient_norm = 0.0;
  int multistart_rank = -1;  // index of the start that produced it
};

// Exact sum and its analytic gradient; throws on (near-)coincident points.
double configuration_energy(const MatrixX2d& points, const DotParams& params,
                            MatrixX2d* gradient = nullptr);

struct MultistartResult {
  PointConfiguration best;                 // lowest energy, ties by start index
  std::vector<PointConfiguration> minima;  // every start that reached stationarity
  int failed_starts = 0;
  bool converged = false;                  // at least one stationary minimum found
};

// BFGS descent with analytic gradients from ring-shell seeds plus uniform
// random starts in the classical support disc; deterministic given seed.
// Step lengths are capped at half the current minimal pair distance so the
// Coulomb singularity is never crossed.
MultistartResult minimize_points(int n_electrons, const DotParams& params,
                                 int multistart = 12, std::uint64_t seed = 1);

struct GapReport {
  double e_classical = 0.0;  // continuum E^C
  double e_point = 0.0;      // best E^P found
  double gap = 0.0;          // E^C - E^P
  double normalized_gap = 0.0;  // (E^C - E^P) / N^(3/2)
};

// E^C from the quadratic-trap closed form evaluated on the kernel's grid.
GapReport gap_to_classical(int n_electrons, double coupling,
                           const coulomb::RadialKernelTable& kernel,
                           int multistart = 12, std::uint64_t seed = 1);

}  // namespace qdot::charges
