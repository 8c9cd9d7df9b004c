#pragma once
// Problem definition shared by all solvers: natural units, confining
// potentials, radial grids and densities.
//
// All internal quantities are in the natural units a* (length), E* (energy),
// B* (magnetic field) with hbar = e* = m* = B* = 1.  Physical units exist
// only at the conversion boundary (the CLI).  In these units the kinetic
// zero point is already at 0 for gamma = 0, so no spectrum-shift constant
// is carried around.

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdot {

using Eigen::VectorXd;

// Conversion factors between physical and natural units for a host material.
struct Material {
  double a_star_nm;   // nm per natural length unit
  double e_star_mev;  // meV per natural energy unit
  double b_star_t;    // tesla per natural field unit

  Material(double a_nm, double e_mev, double b_t);
  static Material gaas() { return Material(10.0, 12.0, 7.0); }
};

enum class Unit { nm, mev, tesla, per_m2 };

Unit parse_unit(const std::string& tag);

double to_natural(double value, Unit unit, const Material& mat);
double from_natural(double value, Unit unit, const Material& mat);

// Shape function v(r) >= 0 of the confining potential V(r) = K v(r).
// v is continuous and grows without bound; only radial potentials are
// supported.
struct PotentialSpec {
  enum class Kind { quadratic, homogeneous, tabulated };

  Kind kind = Kind::quadratic;
  double degree = 2.0;  // homogeneity degree s (quadratic: 2)
  // tabulated profile, linearly interpolated; extrapolated as r^degree
  std::vector<double> tab_r, tab_v;

  static PotentialSpec quadratic();
  static PotentialSpec homogeneous(double s);
  static PotentialSpec tabulated(std::vector<double> r, std::vector<double> v);

  double operator()(double r) const;
  // dv/dr, analytic for quadratic/homogeneous, central difference otherwise
  double derivative(double r) const;
  bool is_quadratic() const { return kind == Kind::quadratic; }
};

// Physical problem instance, all in natural units.
struct DotParams {
  int n_electrons = 1;
  double b_field = 0.0;  // B >= 0
  double coupling = 1.0; // K > 0
  double gamma = 0.0;    // must stay 0 for DFT solves
  PotentialSpec potential = PotentialSpec::quadratic();

  void validate() const;
  double v_ext(double r) const { return coupling * potential(r); }
};

enum class GridSpacing { uniform, graded };

// Radial quadrature grid: nodes 0 = r_0 < ... < r_m and positive weights
// with the 2*pi*r measure folded in, so sum_i w_i f(r_i) ~ int f dx over
// the disc of radius r_max.  Weights are a Gregory rule (uniform interior
// weight, high-order end corrections), exact for the disc area.
struct RadialGrid {
  VectorXd nodes;
  VectorXd weights;
  double r_max = 0.0;
  GridSpacing spacing = GridSpacing::uniform;

  Eigen::Index size() const { return nodes.size(); }
  double integrate(const VectorXd& f) const { return weights.dot(f); }
  // width of the quadrature cell around node i (used for singular kernels)
  double cell_width(Eigen::Index i) const;
  bool same_as(const RadialGrid& other) const;
};

RadialGrid build_grid(double r_max, int intervals, GridSpacing spacing = GridSpacing::uniform);

// Nonnegative density values on a radial grid.
struct RadialDensity {
  RadialGrid grid;
  VectorXd values;

  double mass() const { return grid.integrate(values); }
};

double l1_distance(const RadialDensity& a, const RadialDensity& b);

}  // namespace qdot
