#pragma once
// The TF / MTF / classical energy functionals on a radial grid, the
// piecewise-linear magnetic kinetic density j_B, and the quadratic-trap
// closed forms.

#include "qdot/coulomb.hpp"
#include "qdot/model.hpp"

namespace qdot::dft {

enum class FunctionalKind { tf, mtf, classical };

// Kinetic energy density of the 2D electron gas in field B.
// j_B is convex, piecewise linear with slope n B on (nB/2pi, (n+1)B/2pi);
// at the kinks the subdifferential is the interval [(n-1)B, nB].
// B = 0 specializes to j_0(rho) = pi rho^2 with derivative 2 pi rho.
struct KineticDensity {
  double b_field = 0.0;

  double j(double rho) const;
  // closed subdifferential interval [lo, hi]; kink_tol is measured in
  // filling-factor units nu = 2 pi rho / B
  void jprime_interval(double rho, double kink_tol, double& lo, double& hi) const;
  // corner-smoothed value/derivative used by the descent iteration; eta is
  // the smoothing width in density units
  double j_smoothed(double rho, double eta) const;
  double jprime_smoothed(double rho, double eta) const;
};

// Quadrature value of the selected functional.  MTF with B = 0 is the TF
// path; gamma != 0 is rejected (no spin-split kinetic density here).
double evaluate_functional(FunctionalKind kind, const RadialDensity& rho,
                           const DotParams& params,
                           const coulomb::RadialKernelTable& kernel);

struct ClosedFormClassical {
  RadialDensity density;
  double energy = 0.0;          // functional value by quadrature
  double chemical_potential = 0.0;  // 3 pi N sqrt(lambda) / 4, analytic
  double lambda = 0.0;          // (8K / 3 pi N)^(2/3)
  double support_radius = 0.0;  // lambda^(-1/2), forced by int rho = N
};

// rho^C(r) = (3/2pi) N lambda sqrt(1 - lambda r^2) on r <= lambda^(-1/2)
// for the quadratic trap V = K r^2.  The support radius lambda^(-1/2) is
// the one consistent with the normalization int rho = N.
ClosedFormClassical classical_quadratic_closed_form(int n_electrons, double coupling,
                                                    const RadialGrid& grid,
                                                    const coulomb::RadialKernelTable& kernel);

struct LllThreshold {
  double criterion_value = 0.0;  // 2 pi rho^C(0) = 3 N lambda, from j_B(rho^C(0)) = 0
  double printed_value = 0.0;    // 6 / (3^(2/3) pi^(5/3)) K^(2/3) N^(1/3), for comparison
};

LllThreshold lll_threshold(int n_electrons, double coupling);

// Classical support radius estimate used to size solver boxes.
double support_radius_estimate(int n_electrons, double coupling, const PotentialSpec& v);

}  // namespace qdot::dft
