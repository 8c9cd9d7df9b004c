#include "qdot/spectra.hpp"

#include <algorithm>
#include <cmath>

namespace qdot::spectra {

double omega_big(double b_field, double omega) {
  if (b_field < 0 || omega < 0)
    throw std::invalid_argument("omega_big: B and omega must be nonnegative");
  if (b_field == 0 && omega == 0)
    throw std::invalid_argument("omega_big: B = omega = 0 is degenerate");
  return std::sqrt(0.25 * b_field * b_field + omega * omega);
}

double fock_darwin_energy(int k, int l, double b_field, double omega) {
  if (k < 0) throw std::invalid_argument("fock_darwin_energy: k >= 0 required");
  if (omega == 0.0) {
    omega_big(b_field, omega);  // validates B > 0
    // collapse onto the Landau level of the same index; evaluating through
    // the index keeps the degeneracy exact in floating point
    return (2 * fdl_index(k, l) + 1) * (0.5 * b_field);
  }
  return (2 * k + std::abs(l) + 1) * omega_big(b_field, omega) - 0.5 * l * b_field;
}

int fdl_index(int k, int l) {
  if (k < 0) throw std::invalid_argument("fdl_index: k >= 0 required");
  return k + (std::abs(l) - l) / 2;
}

double landau_energy(int n, double b_field) {
  if (n < 0) throw std::invalid_argument("landau_energy: n >= 0 required");
  if (b_field <= 0) throw std::invalid_argument("landau_energy: B > 0 required");
  return (n + 0.5) * b_field;
}

double landau_degeneracy_density(double b_field) {
  if (b_field <= 0) throw std::invalid_argument("landau_degeneracy_density: B > 0 required");
  return b_field / (2.0 * M_PI);
}

std::vector<SpectrumLine> fock_darwin_spectrum(double b_field, double omega, int count) {
  if (count < 1) throw std::invalid_argument("fock_darwin_spectrum: count >= 1");
  if (omega <= 0)
    throw std::invalid_argument("fock_darwin_spectrum: omega > 0 required (levels are infinitely degenerate at omega = 0)");
  const double Om = omega_big(b_field, omega);
  const double slope_pos = Om - 0.5 * b_field;  // > 0 for omega > 0
  const double slope_neg = Om + 0.5 * b_field;

  std::vector<SpectrumLine> lines;
  double cutoff = Om * (count + 2);
  for (;;) {
    lines.clear();
    int kmax = static_cast<int>((cutoff - Om) / (2 * Om));
    for (int k = 0; k <= kmax; ++k) {
      double base = (2 * k + 1) * Om;
      int lpos = static_cast<int>((cutoff - base) / slope_pos);
      int lneg = static_cast<int>((cutoff - base) / slope_neg);
      for (int l = -lneg; l <= lpos; ++l) {
        double e = (2 * k + std::abs(l) + 1) * Om - 0.5 * l * b_field;
        if (e <= cutoff) lines.push_back({k, l, e, l, fdl_index(k, l)});
      }
    }
    if (static_cast<int>(lines.size()) >= count) break;
    cutoff *= 2.0;
  }
  std::sort(lines.begin(), lines.end(), [](const SpectrumLine& a, const SpectrumLine& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    if (a.l != b.l) return a.l < b.l;
    return a.k < b.k;
  });
  lines.resize(count);
  return lines;
}

std::vector<SpectrumLine> cm_spectrum(int n_electrons, double b_field, double omega, int count) {
  if (n_electrons < 1) throw std::invalid_argument("cm_spectrum: N >= 1 required");
  // Kohn's theorem: the CM spectrum equals the one-body Fock-Darwin
  // spectrum for every N and every interaction.
  return fock_darwin_spectrum(b_field, omega, count);
}

double laguerre(int k, int a, double x) {
  if (k < 0 || a < 0) throw std::invalid_argument("laguerre: k, a >= 0 required");
  if (k == 0) return 1.0;
  double lm1 = 1.0;
  double l0 = 1.0 + a - x;
  for (int i = 1; i < k; ++i) {
    double l1 = ((2 * i + 1 + a - x) * l0 - (i + a) * lm1) / (i + 1);
    lm1 = l0;
    l0 = l1;
  }
  return l0;
}

std::function<double(double)> fock_darwin_orbital(int k, int l, double omega_big_value) {
  if (k < 0) throw std::invalid_argument("fock_darwin_orbital: k >= 0 required");
  if (omega_big_value <= 0) throw std::invalid_argument("fock_darwin_orbital: Omega > 0 required");
  const int la = std::abs(l);
  const double Om = omega_big_value;
  // int R^2 2 pi r dr = pi Omega^-(|l|+1) (k+|l|)! / k! for R = r^|l| e^{-Om r^2/2} L
  const double log_c2 = (la + 1) * std::log(Om) + std::lgamma(k + 1.0) -
                        std::lgamma(k + la + 1.0) - std::log(M_PI);
  const double c = std::exp(0.5 * log_c2);
  return [c, la, Om, k](double r) {
    return c * std::pow(r, la) * std::exp(-0.5 * Om * r * r) * laguerre(k, la, Om * r * r);
  };
}

double lll_orbital_density(int l, double b_field, double r) {
  if (l < 0) throw std::invalid_argument("lll_orbital_density: l >= 0 required");
  if (b_field <= 0) throw std::invalid_argument("lll_orbital_density: B > 0 required");
  const double Om = 0.5 * b_field;
  if (r == 0.0) return l == 0 ? Om / M_PI : 0.0;
  double lg = (l + 1) * std::log(Om) - std::lgamma(l + 1.0) - std::log(M_PI) +
              2.0 * l * std::log(r) - Om * r * r;
  return std::exp(lg);
}

MddState mdd_state(int n_electrons, double b_field, const RadialGrid& grid) {
  if (n_electrons < 1) throw std::invalid_argument("mdd_state: N >= 1 required");
  if (b_field <= 0) throw std::invalid_argument("mdd_state: B > 0 required");
  MddState s;
  s.n_electrons = n_electrons;
  s.b_field = b_field;
  s.total_angular_momentum = static_cast<long>(n_electrons) * (n_electrons - 1) / 2;
  s.density.grid = grid;
  s.density.values = VectorXd::Zero(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    double rho = 0.0;
    for (int l = 0; l < n_electrons; ++l) rho += lll_orbital_density(l, b_field, grid.nodes(i));
    s.density.values(i) = rho;
  }
  return s;
}

MddState mdd_state(int n_electrons, double b_field) {
  const double Om = 0.5 * b_field;
  double r_max = 1.25 * std::sqrt((2.0 * n_electrons + 40.0) / Om);
  int m = std::max(800, 24 * n_electrons);
  return mdd_state(n_electrons, b_field, build_grid(r_max, m));
}

// ---- Taut solutions ------------------------------------------------------

// Coefficients a_0..a_deg of the power series at given Omega; returns a_{deg}.
static std::vector<double> taut_coefficients(int n, int m_abs, double omega_big_value,
                                             int deg) {
  const double kappa = std::sqrt(2.0 / omega_big_value);
  const double eps_prime = 2.0 * (n + m_abs + 1);
  std::vector<double> a(deg + 1, 0.0);
  a[0] = 1.0;
  double prev = 0.0;  // a_{-1}
  for (int nu = 0; nu < deg; ++nu) {
    double next = (kappa * a[nu] + (2.0 * (nu + m_abs) - eps_prime) * prev) /
                  ((nu + 1.0) * (nu + 2.0 * m_abs + 1.0));
    a[nu + 1] = next;
    prev = a[nu];
  }
  return a;
}

double taut_termination(int n, int m, double omega_big_value) {
  if (n < 1) throw std::invalid_argument("taut: n >= 1 required");
  if (omega_big_value <= 0) throw std::invalid_argument("taut: Omega > 0 required");
  auto a = taut_coefficients(n, std::abs(m), omega_big_value, n + 1);
  return a[n + 1];
}

TautScan taut_find_solutions(int n, int m, double omega, double omega_lo, double omega_hi) {
  if (n < 1) throw std::invalid_argument("taut_find_solutions: n >= 1 required");
  if (omega_lo <= 0 || omega_hi <= omega_lo)
    throw std::invalid_argument("taut_find_solutions: need 0 < omega_lo < omega_hi");
  const int m_abs = std::abs(m);

  TautScan scan;
  auto record_root = [&](double Om) {
    if (Om < omega * (1.0 - 1e-12)) {
      scan.rejected_omegas.push_back(Om);  // no real B with Omega < omega
      return;
    }
    double b2 = 4.0 * std::max(0.0, Om * Om - omega * omega);
    TautSolution s;
    s.n = n;
    s.m = m;
    s.omega_big = Om;
    s.b_field = std::sqrt(b2);
    s.e_prime = 4.0 * (n + m_abs + 1);
    s.energy = 0.25 * Om * s.e_prime - 0.5 * m * s.b_field;
    s.coefficients = taut_coefficients(n, m_abs, Om, n);
    scan.solutions.push_back(s);
  };

  const int steps = 8000;
  double prev_x = omega_lo;
  double prev_f = taut_termination(n, m, prev_x);
  if (prev_f == 0.0) record_root(prev_x);
  for (int i = 1; i <= steps; ++i) {
    double x = omega_lo + (omega_hi - omega_lo) * i / steps;
    double f = taut_termination(n, m, x);
    if (f == 0.0) {
      record_root(x);
    } else if (prev_f != 0.0 && std::signbit(f) != std::signbit(prev_f)) {
      double lo = prev_x, hi = x, flo = prev_f;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = taut_termination(n, m, mid);
        if (fm == 0.0) { lo = hi = mid; break; }
        if (std::signbit(fm) == std::signbit(flo)) { lo = mid; flo = fm; }
        else hi = mid;
      }
      record_root(0.5 * (lo + hi));
    }
    prev_x = x;
    prev_f = f;
  }
  return scan;
}

double taut_radial_value(const TautSolution& s, double omega, double r) {
  (void)omega;
  const double sc = std::sqrt(0.5 * s.omega_big);
  const double rho = sc * r;
  double p = 0.0;
  for (int nu = s.n; nu >= 0; --nu) p = p * rho + s.coefficients[nu];
  return std::exp(-0.5 * rho * rho) * std::pow(rho, std::abs(s.m)) * p;
}

double taut_radial_residual(const TautSolution& s, double omega, double r) {
  // Residual of -u'' - u'/r + m^2 u/r^2 - mB u/2 + Omega^2 r^2 u / 4 + u/r - E u,
  // with all derivatives taken analytically in rho = sqrt(Omega/2) r.
  const int M = std::abs(s.m);
  const double sc = std::sqrt(0.5 * s.omega_big);  // s^2 = Omega/2
  const double rho = sc * r;
  if (rho <= 0) return 0.0;
  double p = 0.0, dp = 0.0, d2p = 0.0;
  for (int nu = s.n; nu >= 0; --nu) {
    d2p = d2p * rho + 2.0 * dp;
    dp = dp * rho + p;
    p = p * rho + s.coefficients[nu];
  }
  const double f = std::exp(-0.5 * rho * rho) * std::pow(rho, M);
  const double g = M / rho - rho;  // f'/f
  const double u = f * p;
  const double du = f * (g * p + dp);
  const double d2u = f * ((g * g - M / (rho * rho) - 1.0) * p + 2.0 * g * dp + d2p);
  const double kappa = 1.0 / sc;
  const double eps_prime = 2.0 * (s.n + M + 1);
  // s^2 [ -u'' - u'/rho + M^2 u/rho^2 + rho^2 u + kappa u/rho - eps' u ]
  double res = -d2u - du / rho + (M * M) / (rho * rho) * u + rho * rho * u +
               kappa * u / rho - eps_prime * u;
  return sc * sc * res;
}

double inverse_square_spectrum(int n, int m, double alpha, double b_field, double omega) {
  if (n < 0) throw std::invalid_argument("inverse_square_spectrum: n >= 0 required");
  if (alpha < 0)
    throw std::invalid_argument("inverse_square_spectrum: alpha >= 0 required (attractive core unsupported)");
  const double mu = std::sqrt(static_cast<double>(m) * m + alpha);
  return (2 * n + mu + 1) * omega_big(b_field, omega) - 0.5 * m * b_field;
}

double harmonic_interaction_energy(int n_electrons, double b_field, double omega,
                                   double beta, double w0) {
  if (n_electrons < 2) throw std::invalid_argument("harmonic_interaction_energy: N >= 2 required");
  if (beta < 0 || w0 < 0)
    throw std::invalid_argument("harmonic_interaction_energy: beta, W0 >= 0 required");
  if (omega < std::sqrt(static_cast<double>(n_electrons)) * beta)
    throw std::domain_error("harmonic_interaction_energy: unstable trap, omega < sqrt(N) beta");
  const double N = n_electrons;
  const double Om = omega_big(b_field, omega);
  const double Om0 = std::sqrt(Om * Om - N * beta * beta);
  return Om + 0.5 * (N - 1) * (N - 2) * Om0 - 0.25 * N * (N + 1) * b_field +
         N * (N - 1) * w0;
}

}  // namespace qdot::spectra
