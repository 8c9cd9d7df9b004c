#pragma once
// Constrained minimization of the TF / MTF / classical functionals:
// projected-gradient descent on a corner-smoothed functional with an exact
// water-filling projection onto {rho >= 0, sum w_i rho_i = N}, followed by
// an unsmoothed check of the interval-valued variational conditions
//   mu - V - Phi in j'_B(rho)  where rho > 0,
//   mu - V - Phi <= 0          where rho = 0.

#include "qdot/functional.hpp"

namespace qdot::dft {

struct Domain {
  enum class Label { vacuum, compressible, incompressible };

  Label label = Label::vacuum;
  int level = 0;       // k for incompressible(k), else 0
  double r_lo = 0.0;   // maximal radius interval [r_lo, r_hi]
  double r_hi = 0.0;
};

struct SolveOptions {
  int max_iterations = 20000;     // total budget across smoothing stages
  double kkt_tol = 5e-3;          // accept when violation <= kkt_tol * max(|mu|, eps)
  double eta_factor = 1e-4;       // final smoothing width, eta = eta_factor * B / 2pi
  int continuation_stages = 4;    // eta schedule eta_final * 10^(stages-1) ... eta_final
  double kink_tol = 1e-3;         // kink window for the interval j', in filling units
  double domain_tol = 0.02;       // |rho - kB/2pi| <= tol * B/2pi counts as locked
  VectorXd initial;               // optional warm start (empty: shape-based guess)
};

struct MinimizationResult {
  RadialDensity density;
  double energy = 0.0;               // unsmoothed functional value
  double chemical_potential = 0.0;   // from the final projection multiplier
  double mu_crosscheck = 0.0;        // mean of V + Phi + j' over the bulk
  double kkt_max_violation = 0.0;
  std::vector<Domain> domains;       // filled for MTF with B > 0
  int iterations = 0;
  bool converged = false;
  double max_mass_drift = 0.0;       // max |mass - N| / N seen after any projection
  std::vector<double> energy_trace;  // accepted smoothed energies, per iteration
  std::vector<int> stage_starts;     // trace index where each smoothing stage begins
};

MinimizationResult minimize(FunctionalKind kind, const DotParams& params,
                            const coulomb::RadialKernelTable& kernel,
                            const SolveOptions& options = {});

// Distance of mu - V - Phi to the admissible set at each node (interval
// where rho > vacuum threshold, half-line (-inf, 0] where rho ~ 0).
// Returns the max; per-node values optionally written to `per_node`.
double kkt_report(const RadialDensity& rho, double mu, FunctionalKind kind,
                  const DotParams& params, const coulomb::RadialKernelTable& kernel,
                  double kink_tol = 1e-3, VectorXd* per_node = nullptr);
double kkt_report(const MinimizationResult& result, FunctionalKind kind,
                  const DotParams& params, const coulomb::RadialKernelTable& kernel,
                  double kink_tol = 1e-3, VectorXd* per_node = nullptr);

// Maximal radius intervals where the density is locked at an integer
// multiple of B/2pi (incompressible), strictly between (compressible),
// or negligible (vacuum).  Requires B > 0.
std::vector<Domain> classify_domains(const RadialDensity& rho, int n_electrons,
                                     double b_field, double tol = 0.02);

// V(r_i) + Phi(r_i)
VectorXd effective_potential(const RadialDensity& rho, const DotParams& params,
                             const coulomb::RadialKernelTable& kernel);

// E(N, B, K) vs N^2 E(1, B/N, K/N) and rho_N vs N rho_1 on the same grid.
struct ScalingCheck {
  double energy_rel = 0.0;
  double density_l1_rel = 0.0;  // L1 gap / N
};

ScalingCheck scaling_check(FunctionalKind kind, const DotParams& params,
                           const coulomb::RadialKernelTable& kernel,
                           const SolveOptions& options = {});

// MTF energy gap to the limiting functional along a monotone B schedule:
// TF for B -> 0, classical for B -> infinity.
struct LimitRow {
  double b_field = 0.0;
  double energy_gap_rel = 0.0;
  double density_l1 = 0.0;
};

std::vector<LimitRow> limit_sweep(bool b_to_infinity, const DotParams& params,
                                  const std::vector<double>& b_schedule,
                                  const coulomb::RadialKernelTable& kernel,
                                  const SolveOptions& options = {});

// Grid radius heuristic: a few classical support radii, so converged
// densities vanish well inside the box.
double default_box_radius(const DotParams& params);

}  // namespace qdot::dft
