#include "qdot/coulomb.hpp"

#include <cmath>

namespace qdot::coulomb {

double ellip_k(double m) {
  if (m < 0 || m >= 1) throw std::invalid_argument("ellip_k: need 0 <= m < 1");
  double a = 1.0, b = std::sqrt(1.0 - m);
  for (int i = 0; i < 60 && std::abs(a - b) > 1e-17 * a; ++i) {
    double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return 0.5 * M_PI / a;
}

double angular_kernel(double r, double rp) {
  if (r < 0 || rp < 0) throw std::invalid_argument("angular_kernel: radii must be nonnegative");
  if (r == rp) throw std::invalid_argument("angular_kernel: diverges at r = r'");
  if (r == 0.0) return 2.0 * M_PI / rp;
  if (rp == 0.0) return 2.0 * M_PI / r;
  double s = r + rp;
  double m = 4.0 * r * rp / (s * s);
  return 4.0 / s * ellip_k(m);
}

// K(m) = ln(4/sqrt(1-m)) + R(m); R is bounded, R(1) = 0.
static double ellip_k_remainder(double m) {
  double om = 1.0 - m;
  if (om < 1e-13) return 0.0;
  return ellip_k(m) - std::log(4.0 / std::sqrt(om));
}

double diagonal_cell_average(double r, double h) {
  if (r <= 0 || h <= 0) throw std::invalid_argument("diagonal_cell_average: r, h > 0 required");
  const double a = 0.5 * h;
  // k(r, r+u) = 4/(2r+u) [ln(4(2r+u)) - ln|u| + R(m)].  The smooth factor is
  // integrated by 5-point Gauss-Legendre, the -ln|u| part analytically with
  // the prefactor expanded in u/(2r).
  static const double gx[5] = {0.0, 0.5384693101056831, -0.5384693101056831,
                               0.9061798459386640, -0.9061798459386640};
  static const double gw[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                               0.2369268850561891, 0.2369268850561891};
  double smooth = 0.0;
  for (int q = 0; q < 5; ++q) {
    double u = a * gx[q];
    double s = 2.0 * r + u;
    double m = 1.0 - (u * u) / (s * s);
    smooth += gw[q] * (4.0 / s) * (std::log(4.0 * s) + ellip_k_remainder(m));
  }
  smooth *= a / h;  // (1/h) int over [-a, a]

  const double la = std::log(a);
  const double j0 = 2.0 * a * (la - 1.0);
  const double j2 = (2.0 * a * a * a / 3.0) * (la - 1.0 / 3.0);
  const double j4 = (2.0 * std::pow(a, 5) / 5.0) * (la - 0.2);
  const double inv2r = 1.0 / (2.0 * r);
  double logpart = (2.0 / r) * (j0 + j2 * inv2r * inv2r + j4 * std::pow(inv2r, 4)) / h;
  return smooth - logpart;
}

// mean of ln|u| over [d - a, d + a] with 0 < a < d
static double log_cell_average(double d, double a) {
  return 0.5 * ((d + a) * (std::log(d + a) - 1.0) - (d - a) * (std::log(d - a) - 1.0)) / a;
}

RadialKernelTable build_kernel(const RadialGrid& grid) {
  const Eigen::Index m = grid.size();
  RadialKernelTable t;
  t.grid = grid;
  t.k.resize(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double ri = grid.nodes(i);
    for (Eigen::Index j = 0; j < i; ++j) {
      double rj = grid.nodes(j);
      double v = angular_kernel(ri, rj);
      if (rj > 0.0) {
        // product integration of the log singularity: replace ln|r - r'| by
        // its exact cell mean so node sampling stays second order through the
        // near-diagonal band (symmetrised over the two cells)
        double d = ri - rj, corr = 0.0;
        int cells = 0;
        for (double a : {0.5 * grid.cell_width(i), 0.5 * grid.cell_width(j)})
          if (a < d) {
            corr += std::log(d) - log_cell_average(d, a);
            ++cells;
          }
        if (cells) v += 4.0 / (ri + rj) * corr / cells;
      }
      t.k(i, j) = v;
      t.k(j, i) = v;
    }
    t.k(i, i) = (ri == 0.0) ? 0.0 : diagonal_cell_average(ri, grid.cell_width(i));
  }
  return t;
}

VectorXd coulomb_potential(const RadialDensity& rho, const RadialKernelTable& table) {
  if (!rho.grid.same_as(table.grid)) throw std::invalid_argument("coulomb_potential: grid mismatch");
  // Phi_i = sum_j (w_j / 2pi) k_ij rho_j; the 2 pi r measure lives in w,
  // the angular integral in k.
  VectorXd src = (table.grid.weights.array() * rho.values.array()).matrix() / (2.0 * M_PI);
  return table.k * src;
}

double coulomb_energy(const RadialDensity& rho, const RadialKernelTable& table) {
  VectorXd phi = coulomb_potential(rho, table);
  return 0.5 * table.grid.weights.dot((rho.values.array() * phi.array()).matrix());
}

std::vector<MatrixXd> harmonic_tables(const RadialKernelTable& table, int p_max, int n_theta) {
  if (p_max < 0) throw std::invalid_argument("harmonic_tables: p_max >= 0 required");
  const Eigen::Index m = table.grid.size();
  std::vector<MatrixXd> out(p_max + 1);
  out[0] = table.k / (2.0 * M_PI);
  for (int p = 1; p <= p_max; ++p) out[p].resize(m, m);
  if (p_max == 0) return out;

  std::vector<double> ct(n_theta), corr(p_max + 1);
  std::vector<std::vector<double>> cpt(p_max + 1, std::vector<double>(n_theta));
  for (int t = 0; t < n_theta; ++t) {
    double th = 2.0 * M_PI * (t + 0.5) / n_theta;  // midpoint rule, periodic
    ct[t] = std::cos(th);
    for (int p = 1; p <= p_max; ++p) cpt[p][t] = std::cos(p * th) - 1.0;
  }
  const double dth = 2.0 * M_PI / n_theta;
  for (Eigen::Index i = 0; i < m; ++i) {
    double ri = table.grid.nodes(i);
    for (Eigen::Index j = 0; j <= i; ++j) {
      double rj = table.grid.nodes(j);
      std::fill(corr.begin(), corr.end(), 0.0);
      if (ri > 0 && rj > 0) {
        double r2 = ri * ri + rj * rj, rr = 2.0 * ri * rj;
        for (int t = 0; t < n_theta; ++t) {
          double invd = 1.0 / std::sqrt(r2 - rr * ct[t]);
          for (int p = 1; p <= p_max; ++p) corr[p] += cpt[p][t] * invd;
        }
      }
      for (int p = 1; p <= p_max; ++p) {
        double v = out[0](i, j) + corr[p] * dth / (2.0 * M_PI);
        out[p](i, j) = v;
        out[p](j, i) = v;
      }
    }
  }
  return out;
}

}  // namespace qdot::coulomb
