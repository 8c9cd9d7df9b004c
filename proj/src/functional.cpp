#include "qdot/functional.hpp"

#include <cmath>

namespace qdot::dft {

double KineticDensity::j(double rho) const {
  if (rho <= 0) return 0.0;
  if (b_field == 0.0) return M_PI * rho * rho;
  const double step = b_field / (2.0 * M_PI);  // level capacity per unit area
  const double n = std::floor(rho / step);
  return n * b_field * rho - (b_field * b_field / (2.0 * M_PI)) * 0.5 * n * (n + 1.0);
}

void KineticDensity::jprime_interval(double rho, double kink_tol, double& lo, double& hi) const {
  if (rho < 0) rho = 0;
  if (b_field == 0.0) {
    lo = hi = 2.0 * M_PI * rho;
    return;
  }
  const double nu = 2.0 * M_PI * rho / b_field;
  const double nr = std::round(nu);
  if (nr >= 1.0 && std::abs(nu - nr) <= kink_tol) {
    lo = (nr - 1.0) * b_field;
    hi = nr * b_field;
  } else {
    lo = hi = std::floor(nu) * b_field;
  }
}

double KineticDensity::jprime_smoothed(double rho, double eta) const {
  if (rho < 0) rho = 0;
  if (b_field == 0.0) return 2.0 * M_PI * rho;
  const double step = b_field / (2.0 * M_PI);
  const double n = std::round(rho / step);
  if (n >= 1.0 && std::abs(rho - n * step) <= 0.5 * eta) {
    double t = rho - (n * step - 0.5 * eta);
    return (n - 1.0) * b_field + b_field * t / eta;
  }
  return std::floor(rho / step) * b_field;
}

double KineticDensity::j_smoothed(double rho, double eta) const {
  if (rho <= 0) return 0.0;
  if (b_field == 0.0) return M_PI * rho * rho;
  const double step = b_field / (2.0 * M_PI);
  const double n = std::round(rho / step);
  // the ramp is symmetric about the kink, so outside it j_smoothed == j
  if (n < 1.0 || std::abs(rho - n * step) > 0.5 * eta) return j(rho);
  double base = n * step - 0.5 * eta;
  double t = rho - base;
  return j(base) + (n - 1.0) * b_field * t + 0.5 * b_field * t * t / eta;
}

double evaluate_functional(FunctionalKind kind, const RadialDensity& rho,
                           const DotParams& params,
                           const coulomb::RadialKernelTable& kernel) {
  params.validate();
  if (kind == FunctionalKind::mtf && params.gamma != 0.0)
    throw std::invalid_argument("MTF functional: gamma != 0 is unsupported");
  if (!rho.grid.same_as(kernel.grid))
    throw std::invalid_argument("evaluate_functional: grid mismatch");

  double e = coulomb::coulomb_energy(rho, kernel);
  KineticDensity kin{kind == FunctionalKind::mtf ? params.b_field : 0.0};
  const bool with_kinetic = kind != FunctionalKind::classical;
  for (Eigen::Index i = 0; i < rho.grid.size(); ++i) {
    double r = rho.grid.nodes(i), d = rho.values(i);
    double integrand = params.v_ext(r) * d;
    if (with_kinetic) integrand += kin.j(d);
    e += rho.grid.weights(i) * integrand;
  }
  return e;
}

ClosedFormClassical classical_quadratic_closed_form(int n_electrons, double coupling,
                                                    const RadialGrid& grid,
                                                    const coulomb::RadialKernelTable& kernel) {
  if (n_electrons < 1 || coupling <= 0)
    throw std::invalid_argument("classical_quadratic_closed_form: N >= 1, K > 0 required");
  const double N = n_electrons;
  const double lambda = std::pow(8.0 * coupling / (3.0 * M_PI * N), 2.0 / 3.0);

  ClosedFormClassical out;
  out.lambda = lambda;
  out.support_radius = 1.0 / std::sqrt(lambda);
  out.chemical_potential = 0.75 * M_PI * N * std::sqrt(lambda);
  out.density.grid = grid;
  out.density.values.resize(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    double s = 1.0 - lambda * grid.nodes(i) * grid.nodes(i);
    out.density.values(i) = s > 0 ? (1.5 / M_PI) * N * lambda * std::sqrt(s) : 0.0;
  }
  DotParams p;
  p.n_electrons = n_electrons;
  p.coupling = coupling;
  p.potential = PotentialSpec::quadratic();
  out.energy = evaluate_functional(FunctionalKind::classical, out.density, p, kernel);
  return out;
}

LllThreshold lll_threshold(int n_electrons, double coupling) {
  if (n_electrons < 1 || coupling <= 0)
    throw std::invalid_argument("lll_threshold: N >= 1, K > 0 required");
  const double N = n_electrons;
  const double lambda = std::pow(8.0 * coupling / (3.0 * M_PI * N), 2.0 / 3.0);
  LllThreshold t;
  t.criterion_value = 3.0 * N * lambda;  // 2 pi rho^C(0)
  t.printed_value = 6.0 / (std::pow(3.0, 2.0 / 3.0) * std::pow(M_PI, 5.0 / 3.0)) *
                    std::pow(coupling, 2.0 / 3.0) * std::cbrt(N);
  return t;
}

double support_radius_estimate(int n_electrons, double coupling, const PotentialSpec& v) {
  const double N = n_electrons;
  if (v.is_quadratic())
    return 1.0 / std::sqrt(std::pow(8.0 * coupling / (3.0 * M_PI * N), 2.0 / 3.0));
  if (v.kind == PotentialSpec::Kind::homogeneous)
    return 1.5 * std::pow(N / coupling, 1.0 / (v.degree + 1.0));
  // tabulated: expand until the trap wall dominates the self-repulsion
  double r = 1.0;
  for (int i = 0; i < 60 && coupling * v(r) < 2.5 * N / r; ++i) r *= 1.3;
  return r;
}

}  // namespace qdot::dft
