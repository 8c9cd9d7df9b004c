#include "qdot/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qdot::dft {

namespace {

// Weighted Euclidean projection of y onto {x >= 0, sum w_i x_i = N}:
// x_i = max(0, y_i + t) with t fixed by the mass constraint.  Solved
// exactly by sorting the breakpoints -y_i and scanning.
double project_mass(const VectorXd& y, const VectorXd& w, double n_target, VectorXd& x) {
  const Eigen::Index m = y.size();
  std::vector<Eigen::Index> idx;
  idx.reserve(m);
  for (Eigen::Index i = 0; i < m; ++i)
    if (w(i) > 0) idx.push_back(i);
  // descending y: nodes enter the active set in this order as t grows
  std::sort(idx.begin(), idx.end(),
            [&](Eigen::Index a, Eigen::Index b) { return y(a) > y(b); });

  double sw = 0.0, swy = 0.0, t = 0.0;
  bool found = false;
  for (std::size_t p = 0; p < idx.size(); ++p) {
    sw += w(idx[p]);
    swy += w(idx[p]) * y(idx[p]);
    double cand = (n_target - swy) / sw;
    // valid if exactly the first p+1 nodes are active at this multiplier
    double hi = y(idx[p]);                                      // need cand > -hi
    double lo = (p + 1 < idx.size()) ? y(idx[p + 1]) : -1e300;  // and cand <= -lo
    if (cand + hi > 0 && cand + lo <= 0) {
      t = cand;
      found = true;
      break;
    }
  }
  if (!found) t = (n_target - swy) / sw;  // all nodes active

  // Newton iteration on the (piecewise linear, monotone) mass keeps the
  // constraint exact to round-off even when the breakpoint scan loses
  // accuracy to cancellation in the prefix sums (large gradient steps).
  for (int pass = 0; pass < 60; ++pass) {
    x = (y.array() + t).cwiseMax(0.0).matrix();
    double mass = w.dot(x), swa = 0.0;
    for (Eigen::Index i = 0; i < m; ++i)
      if (x(i) > 0) swa += w(i);
    if (std::abs(mass - n_target) <= 1e-13 * n_target || swa <= 0) break;
    t += (n_target - mass) / swa;
  }
  return t;
}

struct Problem {
  FunctionalKind kind;
  const DotParams& params;
  const coulomb::RadialKernelTable& kernel;
  VectorXd v;  // external potential per node
  KineticDensity kin;

  Problem(FunctionalKind k, const DotParams& p, const coulomb::RadialKernelTable& ker)
      : kind(k), params(p), kernel(ker) {
    const RadialGrid& g = ker.grid;
    v.resize(g.size());
    for (Eigen::Index i = 0; i < g.size(); ++i) v(i) = p.v_ext(g.nodes(i));
    kin.b_field = (k == FunctionalKind::mtf) ? p.b_field : 0.0;
  }

  bool has_kinetic() const { return kind != FunctionalKind::classical; }

  VectorXd phi(const VectorXd& rho) const {
    return kernel.k * ((kernel.grid.weights.array() * rho.array()).matrix() / (2.0 * M_PI));
  }

  double energy_smoothed(const VectorXd& rho, const VectorXd& phi_rho, double eta) const {
    const VectorXd& w = kernel.grid.weights;
    double e = 0.5 * w.dot((rho.array() * phi_rho.array()).matrix()) +
               w.dot((v.array() * rho.array()).matrix());
    if (has_kinetic())
      for (Eigen::Index i = 0; i < rho.size(); ++i)
        e += w(i) * kin.j_smoothed(rho(i), eta);
    return e;
  }

  // gradient in the weighted metric: dE/d(rho_i) / w_i
  VectorXd gradient(const VectorXd& rho, const VectorXd& phi_rho, double eta) const {
    VectorXd g = v + phi_rho;
    if (has_kinetic())
      for (Eigen::Index i = 0; i < rho.size(); ++i) g(i) += kin.jprime_smoothed(rho(i), eta);
    return g;
  }
};

VectorXd initial_guess(const DotParams& params, const coulomb::RadialKernelTable& kernel) {
  const RadialGrid& g = kernel.grid;
  VectorXd rho(g.size());
  if (params.potential.is_quadratic()) {
    double lambda =
        std::pow(8.0 * params.coupling / (3.0 * M_PI * params.n_electrons), 2.0 / 3.0);
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      double s = 1.0 - lambda * g.nodes(i) * g.nodes(i);
      rho(i) = s > 0 ? (1.5 / M_PI) * params.n_electrons * lambda * std::sqrt(s) : 0.0;
    }
  } else {
    double r0 = support_radius_estimate(params.n_electrons, params.coupling, params.potential);
    double level = params.n_electrons / (M_PI * r0 * r0);
    for (Eigen::Index i = 0; i < g.size(); ++i) rho(i) = g.nodes(i) <= r0 ? level : 0.0;
  }
  return rho;
}

}  // namespace

double default_box_radius(const DotParams& params) {
  return 3.0 * support_radius_estimate(params.n_electrons, params.coupling, params.potential);
}

MinimizationResult minimize(FunctionalKind kind, const DotParams& params,
                            const coulomb::RadialKernelTable& kernel,
                            const SolveOptions& options) {
  params.validate();
  if (kind == FunctionalKind::mtf && params.gamma != 0.0)
    throw std::invalid_argument("minimize: MTF with gamma != 0 is unsupported");

  const RadialGrid& grid = kernel.grid;
  const VectorXd& w = grid.weights;
  const double n_target = params.n_electrons;
  const bool stepped = kind == FunctionalKind::mtf && params.b_field > 0;

  MinimizationResult res;
  res.density.grid = grid;

  Problem prob(kind, params, kernel);

  VectorXd rho = options.initial.size() == grid.size() ? options.initial
                                                       : initial_guess(params, kernel);
  double t_mult = project_mass(rho, w, n_target, rho);
  res.max_mass_drift = std::abs(w.dot(rho) - n_target) / n_target;

  const double eta_final = stepped ? options.eta_factor * params.b_field / (2.0 * M_PI) : 0.0;
  const int stages = stepped ? std::max(1, options.continuation_stages) : 1;
  const int iters_per_stage = std::max(1, options.max_iterations / stages);

  double alpha = 0.0;  // accepted step of the previous iteration
  for (int stage = 0; stage < stages; ++stage) {
    const double eta = stepped ? eta_final * std::pow(10.0, stages - 1 - stage) : 0.0;
    res.stage_starts.push_back(static_cast<int>(res.energy_trace.size()));

    VectorXd phi = prob.phi(rho);
    double e = prob.energy_smoothed(rho, phi, eta);
    VectorXd g = prob.gradient(rho, phi, eta);
    res.energy_trace.push_back(e);

    // conservative first step from the local curvature scale
    double gs = (g.array() - g.mean()).abs().maxCoeff();
    alpha = gs > 0 ? 0.05 * (rho.maxCoeff() + n_target / (M_PI * grid.r_max * grid.r_max)) / gs
                   : 1.0;
    VectorXd rho_prev, g_prev;
    int stagnant = 0;

    for (int it = 0; it < iters_per_stage; ++it, ++res.iterations) {
      if (rho_prev.size()) {  // Barzilai-Borwein step in the weighted metric
        VectorXd s = rho - rho_prev, dy = g - g_prev;
        double sy = (w.array() * s.array() * dy.array()).sum();
        double ss = (w.array() * s.array() * s.array()).sum();
        if (sy > 0 && ss > 0) alpha = std::clamp(ss / sy, 1e-14, 1e6);
      }

      bool accepted = false;
      double a = alpha;
      VectorXd trial, phi_trial;
      double e_trial = 0.0, t_trial = 0.0;
      for (int bt = 0; bt < 50; ++bt) {
        t_trial = project_mass(rho - a * g, w, n_target, trial);
        phi_trial = prob.phi(trial);
        e_trial = prob.energy_smoothed(trial, phi_trial, eta);
        double slope = (w.array() * g.array() * (trial - rho).array()).sum();
        if (e_trial <= e + 1e-4 * slope + 1e-15 * std::abs(e)) {
          accepted = true;
          break;
        }
        a *= 0.5;
      }
      if (!accepted) break;
      alpha = a;
      t_mult = t_trial;

      double step_l1 = (w.array() * (trial - rho).array().abs()).sum();
      double de = e - e_trial;

      rho_prev.swap(rho);
      g_prev.swap(g);
      rho = std::move(trial);
      phi = std::move(phi_trial);
      g = prob.gradient(rho, phi, eta);
      e = e_trial;
      res.energy_trace.push_back(e);
      res.max_mass_drift =
          std::max(res.max_mass_drift, std::abs(w.dot(rho) - n_target) / n_target);

      if (step_l1 <= 1e-13 * n_target || de <= 1e-15 * (std::abs(e) + 1.0)) {
        if (++stagnant >= 8) break;
      } else {
        stagnant = 0;
      }
    }
  }

  res.density.values = rho;

  // unsmoothed energy and multiplier: one more projection at the solution
  VectorXd phi = prob.phi(rho);
  res.energy = evaluate_functional(kind, res.density, params, kernel);
  VectorXd g = prob.gradient(rho, phi, eta_final);
  if (alpha > 0) {
    VectorXd fixed;
    double t = project_mass(rho - alpha * g, w, n_target, fixed);
    res.chemical_potential = t / alpha;
  } else {
    res.chemical_potential = t_mult;
  }

  // cross-check: mean of V + Phi + j' over the bulk (midpoint of the interval)
  const double vac = 1e-10 * n_target / (M_PI * grid.r_max * grid.r_max);
  double acc = 0.0, wacc = 0.0;
  for (Eigen::Index i = 0; i < rho.size(); ++i) {
    if (rho(i) <= vac || w(i) <= 0) continue;
    double lo, hi;
    prob.kin.jprime_interval(rho(i), options.kink_tol, lo, hi);
    double jp = prob.has_kinetic() ? 0.5 * (lo + hi) : 0.0;
    acc += w(i) * (prob.v(i) + phi(i) + jp);
    wacc += w(i);
  }
  res.mu_crosscheck = wacc > 0 ? acc / wacc : res.chemical_potential;

  double viol = kkt_report(res.density, res.chemical_potential, kind, params, kernel,
                           options.kink_tol);
  double viol_x = kkt_report(res.density, res.mu_crosscheck, kind, params, kernel,
                             options.kink_tol);
  if (viol_x < viol) {
    std::swap(res.chemical_potential, res.mu_crosscheck);
    std::swap(viol, viol_x);
  }
  res.kkt_max_violation = viol;
  res.converged = viol <= options.kkt_tol * std::max(std::abs(res.chemical_potential), 1e-12);

  if (stepped)
    res.domains = classify_domains(res.density, params.n_electrons, params.b_field,
                                   options.domain_tol);
  return res;
}

double kkt_report(const RadialDensity& rho, double mu, FunctionalKind kind,
                  const DotParams& params, const coulomb::RadialKernelTable& kernel,
                  double kink_tol, VectorXd* per_node) {
  if (!rho.grid.same_as(kernel.grid)) throw std::invalid_argument("kkt_report: grid mismatch");
  VectorXd phi = coulomb::coulomb_potential(rho, kernel);
  KineticDensity kin{kind == FunctionalKind::mtf ? params.b_field : 0.0};
  const bool with_kinetic = kind != FunctionalKind::classical;
  const double vac =
      1e-10 * params.n_electrons / (M_PI * rho.grid.r_max * rho.grid.r_max);

  VectorXd viol(rho.grid.size());
  for (Eigen::Index i = 0; i < rho.grid.size(); ++i) {
    double s = mu - params.v_ext(rho.grid.nodes(i)) - phi(i);
    if (rho.values(i) <= vac) {
      viol(i) = std::max(0.0, s);
    } else if (with_kinetic) {
      double lo, hi;
      kin.jprime_interval(rho.values(i), kink_tol, lo, hi);
      viol(i) = s < lo ? lo - s : (s > hi ? s - hi : 0.0);
    } else {
      viol(i) = std::abs(s);
    }
  }
  if (per_node) *per_node = viol;
  return viol.maxCoeff();
}

double kkt_report(const MinimizationResult& result, FunctionalKind kind,
                  const DotParams& params, const coulomb::RadialKernelTable& kernel,
                  double kink_tol, VectorXd* per_node) {
  return kkt_report(result.density, result.chemical_potential, kind, params, kernel,
                    kink_tol, per_node);
}

std::vector<Domain> classify_domains(const RadialDensity& rho, int n_electrons,
                                     double b_field, double tol) {
  if (b_field <= 0)
    throw std::invalid_argument("classify_domains: requires B > 0 (no Landau structure)");
  const double step = b_field / (2.0 * M_PI);
  const double vac = 1e-10 * n_electrons / (M_PI * rho.grid.r_max * rho.grid.r_max);

  auto label_node = [&](double d, int& level) {
    level = 0;
    if (d <= vac) return Domain::Label::vacuum;
    int k = static_cast<int>(std::lround(d / step));
    if (k >= 1 && std::abs(d - k * step) <= tol * step) {
      level = k;
      return Domain::Label::incompressible;
    }
    return Domain::Label::compressible;
  };

  std::vector<Domain> out;
  std::vector<Eigen::Index> counts;
  for (Eigen::Index i = 0; i < rho.grid.size(); ++i) {
    int level;
    Domain::Label lab = label_node(rho.values(i), level);
    if (!out.empty() && out.back().label == lab && out.back().level == level) {
      out.back().r_hi = rho.grid.nodes(i);
      ++counts.back();
    } else {
      Domain d;
      d.label = lab;
      d.level = level;
      d.r_lo = d.r_hi = rho.grid.nodes(i);
      out.push_back(d);
      counts.push_back(1);
    }
  }

  // a domain needs a few grid cells of support; shorter runs (e.g. a single
  // node grazing a Landau filling) are discretization artifacts and are
  // absorbed into the wider neighbour
  while (out.size() > 1) {
    // dissolve the shortest undersized run first so artifacts never absorb
    // their neighbours
    std::size_t i = out.size();
    for (std::size_t j = 0; j < out.size(); ++j)
      if (counts[j] < 3 && (i == out.size() || counts[j] < counts[i])) i = j;
    if (i == out.size()) break;
    {
      std::size_t into;
      if (i == 0)
        into = 1;
      else if (i + 1 == out.size() || counts[i - 1] >= counts[i + 1])
        into = i - 1;
      else
        into = i + 1;
      out[into].r_lo = std::min(out[into].r_lo, out[i].r_lo);
      out[into].r_hi = std::max(out[into].r_hi, out[i].r_hi);
      counts[into] += counts[i];
      out.erase(out.begin() + i);
      counts.erase(counts.begin() + i);
      // coalesce newly adjacent equal domains
      for (std::size_t j = 0; j + 1 < out.size(); ++j)
        if (out[j].label == out[j + 1].label && out[j].level == out[j + 1].level) {
          out[j].r_hi = out[j + 1].r_hi;
          counts[j] += counts[j + 1];
          out.erase(out.begin() + j + 1);
          counts.erase(counts.begin() + j + 1);
          --j;
        }
    }
  }
  return out;
}

VectorXd effective_potential(const RadialDensity& rho, const DotParams& params,
                             const coulomb::RadialKernelTable& kernel) {
  VectorXd phi = coulomb::coulomb_potential(rho, kernel);
  for (Eigen::Index i = 0; i < phi.size(); ++i) phi(i) += params.v_ext(rho.grid.nodes(i));
  return phi;
}

ScalingCheck scaling_check(FunctionalKind kind, const DotParams& params,
                           const coulomb::RadialKernelTable& kernel,
                           const SolveOptions& options) {
  const double n = params.n_electrons;
  MinimizationResult full = minimize(kind, params, kernel, options);

  DotParams unit = params;
  unit.n_electrons = 1;
  unit.b_field = params.b_field / n;
  unit.coupling = params.coupling / n;
  MinimizationResult one = minimize(kind, unit, kernel, options);

  ScalingCheck c;
  c.energy_rel = std::abs(full.energy - n * n * one.energy) / std::abs(full.energy);
  RadialDensity scaled{kernel.grid, n * one.density.values};
  c.density_l1_rel = l1_distance(full.density, scaled) / n;
  return c;
}

std::vector<LimitRow> limit_sweep(bool b_to_infinity, const DotParams& params,
                                  const std::vector<double>& b_schedule,
                                  const coulomb::RadialKernelTable& kernel,
                                  const SolveOptions& options) {
  for (std::size_t i = 1; i < b_schedule.size(); ++i)
    if ((b_schedule[i] > b_schedule[i - 1]) != b_to_infinity &&
        b_schedule[i] != b_schedule[i - 1])
      throw std::invalid_argument("limit_sweep: B schedule must be monotone toward the limit");

  DotParams limit_params = params;
  limit_params.b_field = 0.0;
  MinimizationResult limit =
      minimize(b_to_infinity ? FunctionalKind::classical : FunctionalKind::tf, limit_params,
               kernel, options);

  std::vector<LimitRow> rows;
  SolveOptions warm = options;
  for (double b : b_schedule) {
    DotParams p = params;
    p.b_field = b;
    MinimizationResult r = minimize(FunctionalKind::mtf, p, kernel, warm);
    warm.initial = r.density.values;
    LimitRow row;
    row.b_field = b;
    row.energy_gap_rel = std::abs(r.energy - limit.energy) /
                         std::max(std::abs(limit.energy), 1e-300);
    row.density_l1 = l1_distance(r.density, limit.density);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qdot::dft
