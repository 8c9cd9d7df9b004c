#include "qdot/point_charges.hpp"

#include "qdot/functional.hpp"

#include <cmath>
#include <random>

namespace qdot::charges {

double configuration_energy(const MatrixX2d& points, const DotParams& params,
                            MatrixX2d* gradient) {
  const Eigen::Index n = points.rows();
  if (gradient) gradient->setZero(n, 2);

  double e = 0.0;
  double scale = 1.0 + points.rowwise().norm().maxCoeff();
  for (Eigen::Index i = 0; i < n; ++i) {
    double r = points.row(i).norm();
    e += params.coupling * params.potential(r);
    if (gradient && r > 0)
      gradient->row(i) += params.coupling * params.potential.derivative(r) / r * points.row(i);
  }
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      Eigen::RowVector2d d = points.row(i) - points.row(j);
      double rij = d.norm();
      if (rij < 1e-12 * scale)
        throw std::domain_error("configuration_energy: coincident points");
      e += 1.0 / rij;
      if (gradient) {
        Eigen::RowVector2d f = d / (rij * rij * rij);
        gradient->row(i) -= f;
        gradient->row(j) += f;
      }
    }
  return e;
}

namespace {

double min_pair_distance(const MatrixX2d& p) {
  double d = 1e300;
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    for (Eigen::Index j = i + 1; j < p.rows(); ++j)
      d = std::min(d, (p.row(i) - p.row(j)).norm());
  return d;
}

// BFGS with Armijo backtracking; steps capped at half the minimal pair
// distance so two charges can never be pushed through each other.
PointConfiguration descend(MatrixX2d p, const DotParams& params, int rank) {
  const Eigen::Index dim = 2 * p.rows();
  auto flatten = [](const MatrixX2d& m) {
    return Eigen::Map<const VectorXd>(m.data(), m.size()).eval();
  };
  auto unflatten = [&](const VectorXd& v) {
    return Eigen::Map<const MatrixX2d>(v.data(), v.size() / 2, 2).eval();
  };

  MatrixX2d grad;
  double e = configuration_energy(p, params, &grad);
  VectorXd x = flatten(p), g = flatten(grad);
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(dim, dim) / (1.0 + 4.0 * params.coupling);

  for (int it = 0; it < 3000; ++it) {
    if (g.lpNorm<Eigen::Infinity>() <= 1e-10 * (1.0 + std::abs(e))) break;
    VectorXd d = -(h * g);
    if (d.dot(g) >= 0) {  // reset on loss of descent
      h.setIdentity();
      h /= 1.0 + 4.0 * params.coupling;
      d = -g;
    }
    double max_move = 0.0;
    for (Eigen::Index i = 0; i < p.rows(); ++i)
      max_move = std::max(max_move, d.segment<2>(2 * i).norm());
    double cap = p.rows() > 1 ? 0.5 * min_pair_distance(unflatten(x)) : 1e300;
    double a = std::min(1.0, max_move > 0 ? cap / max_move : 1.0);

    double e_new = e;
    VectorXd x_new;
    bool ok = false;
    for (int bt = 0; bt < 60; ++bt) {
      x_new = x + a * d;
      try {
        e_new = configuration_energy(unflatten(x_new), params, nullptr);
      } catch (const std::domain_error&) {
        a *= 0.5;
        continue;
      }
      if (e_new <= e + 1e-4 * a * d.dot(g)) {
        ok = true;
        break;
      }
      a *= 0.5;
    }
    if (!ok) break;

    MatrixX2d p_new = unflatten(x_new);
    MatrixX2d grad_new;
    configuration_energy(p_new, params, &grad_new);
    VectorXd g_new = flatten(grad_new);

    VectorXd s = x_new - x, y = g_new - g;
    double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      VectorXd hy = h * y;
      double yhy = y.dot(hy);
      h += ((sy + yhy) / (sy * sy)) * (s * s.transpose()) -
           (hy * s.transpose() + s * hy.transpose()) / sy;
    }
    x = std::move(x_new);
    g = std::move(g_new);
    e = e_new;
  }

  PointConfiguration c;
  c.positions = unflatten(x);
  c.energy = e;
  c.gradient_norm = g.norm();
  c.multistart_rank = rank;
  return c;
}

// electrons on concentric rings, populations proportional to radius
MatrixX2d ring_seed(int n, int rings, bool center, double r_outer) {
  MatrixX2d p(n, 2);
  int placed = 0;
  if (center && n > 0) p.row(placed++).setZero();
  int remaining = n - placed;
  double wsum = 0;
  for (int j = 1; j <= rings; ++j) wsum += j;
  for (int j = 1; j <= rings && remaining > 0; ++j) {
    int nj = j == rings ? remaining : std::min(remaining, (int)std::lround(remaining * j / wsum));
    if (nj < 1) nj = 1;
    double r = r_outer * j / rings;
    for (int q = 0; q < nj && placed < n; ++q, ++placed) {
      double th = 2.0 * M_PI * q / nj + 0.1 * j;  // offset breaks ring alignment
      p.row(placed) << r * std::cos(th), r * std::sin(th);
    }
    remaining = n - placed;
  }
  return p;
}

}  // namespace

MultistartResult minimize_points(int n_electrons, const DotParams& params, int multistart,
                                 std::uint64_t seed) {
  params.validate();
  if (n_electrons < 1) throw std::invalid_argument("minimize_points: N >= 1 required");
  if (multistart < 1) throw std::invalid_argument("minimize_points: multistart >= 1 required");

  const double r0 =
      dft::support_radius_estimate(n_electrons, params.coupling, params.potential);

  std::vector<MatrixX2d> seeds;
  if (n_electrons == 1) {
    seeds.push_back(MatrixX2d::Zero(1, 2));
  } else {
    for (int rings = 1; rings <= std::min(3, n_electrons); ++rings) {
      seeds.push_back(ring_seed(n_electrons, rings, false, 0.7 * r0));
      if (n_electrons > rings + 1) seeds.push_back(ring_seed(n_electrons, rings, true, 0.7 * r0));
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  while ((int)seeds.size() < multistart) {
    MatrixX2d p(n_electrons, 2);
    for (int i = 0; i < n_electrons; ++i) {
      double r = r0 * std::sqrt(unif(rng)), th = 2.0 * M_PI * unif(rng);
      p.row(i) << r * std::cos(th), r * std::sin(th);
    }
    seeds.push_back(p);
  }
  seeds.resize(multistart);

  MultistartResult out;
  PointConfiguration fallback;  // lowest energy seen even if not stationary
  for (int s = 0; s < multistart; ++s) {
    PointConfiguration c = descend(seeds[s], params, s);
    bool stationary = c.gradient_norm <= 1e-8 * (1.0 + std::abs(c.energy));
    if (fallback.multistart_rank < 0 || c.energy < fallback.energy) fallback = c;
    if (!stationary) {
      ++out.failed_starts;
      continue;
    }
    out.minima.push_back(c);
    // deterministic ordered fold: strict improvement keeps the earliest start
    if (!out.converged || c.energy < out.best.energy) out.best = c;
    out.converged = true;
  }
  if (!out.converged) out.best = fallback;
  return out;
}

GapReport gap_to_classical(int n_electrons, double coupling,
                           const coulomb::RadialKernelTable& kernel, int multistart,
                           std::uint64_t seed) {
  DotParams p;
  p.n_electrons = n_electrons;
  p.coupling = coupling;
  p.potential = PotentialSpec::quadratic();

  GapReport r;
  r.e_classical =
      dft::classical_quadratic_closed_form(n_electrons, coupling, kernel.grid, kernel).energy;
  r.e_point = minimize_points(n_electrons, p, multistart, seed).best.energy;
  r.gap = r.e_classical - r.e_point;
  r.normalized_gap = r.gap / std::pow((double)n_electrons, 1.5);
  return r;
}

}  // namespace qdot::charges
