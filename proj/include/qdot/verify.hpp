#pragma once
// Numeric verification of the structural inequalities: the planar exchange
// inequality for determinantal states, the magnetic Lieb-Thirring bound on
// a phase-factor lattice, the kinetic lower bound for lowest-level
// determinants, and the block structure of the projected interaction.

#include "qdot/coulomb.hpp"
#include "qdot/lattice.hpp"
#include "qdot/model.hpp"

#include <string>

namespace qdot::verify {

// Fully polarized determinant of lowest-level orbitals with distinct
// angular momenta l >= 0.
struct SlaterLLLState {
  std::vector<int> occupied;  // sorted, distinct
  double b_field = 0.0;
  RadialGrid grid;
  Eigen::MatrixXd radial;  // radial(i, q) = R_{l_q}(r_i), R^2 = orbital density
  RadialDensity density;   // sum of orbital densities

  // |K(x, y)|^2 for the one-body density matrix K, at radii (r_i, r_j) and
  // relative angle theta
  double exchange_kernel_sq(Eigen::Index i, Eigen::Index j, double theta) const;
};

SlaterLLLState make_lll_state(std::vector<int> occupied, double b_field,
                              const RadialGrid& grid);

// Grid sized so every orbital with l <= l_max has decayed to round-off.
RadialGrid lll_grid(int l_max, double b_field, int intervals = 600);

struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // amount by which the inequality holds (>= 0 expected)
  bool pass = false;    // margin >= -1e-6 |rhs|
  bool inconclusive = false;  // refinement diagnostic failed; margin untrusted
  std::string note;
};

// Pair-interaction energy of the determinant vs the direct term minus
// 192 (2pi)^(1/2) int rho^(3/2):  lhs = D(rho,rho) - X >= rhs.  Declared
// inconclusive if grid refinement moves lhs by more than 1e-4 relative.
InequalityReport exchange_inequality_check(const SlaterLLLState& state,
                                           const coulomb::RadialKernelTable& kernel,
                                           bool refine = true);

// (1/3)(1-lambda)^2 int [rho - B/(2 pi lambda)]_+^2 <= T = 0 for a
// lowest-level determinant; the excess must be quadrature noise.  For
// lambda > 0.95 edge effects dominate and the report is informational only.
InequalityReport kinetic_bound_check(const SlaterLLLState& state, double lambda);

struct LtOptions {
  int n = 64;               // lattice sites per side (refinement doubles this)
  double half_width = 0.0;  // 0: sized from B so eigenfunctions decay to 1e-8
  bool refine = true;       // gate on <= 2% drift under spacing halving
  int max_steps = 500;
};

// Sum of |negative eigenvalues| of (1/2)(i grad - A)^2 + s3 B - U (both spin
// branches) against  lambda^-1 (B/2pi) int U_+  +  (3/4)(1-lambda)^-2 int U_+^2.
InequalityReport lieb_thirring_check(const std::function<double(double, double)>& u,
                                     double b_field, double lambda,
                                     const LtOptions& options = {});

struct BlockReport {
  int sector_dimension = 0;       // # determinants with total L3 = N(N-1)/2
  long mdd_l3 = 0;                // N(N-1)/2
  double max_cross_element = 0.0; // largest |<A|W|B>| across distinct L3 sectors
  bool pass = false;              // dimension 1 and cross elements <= 1e-10
};

// Projected Coulomb interaction over determinants with 0 <= l <= l_max:
// verifies the interaction conserves total L3 and that the minimal-L3
// sector is one-dimensional.
BlockReport lll_block_structure(int n_electrons, int l_max, double b_field,
                                const coulomb::RadialKernelTable& kernel);

}  // namespace qdot::verify
