#include "oracles.hpp"

#include "qdot/coulomb.hpp"

#include <cmath>
#include <stdexcept>

namespace oracles {

namespace {

// number of eigenvalues strictly below x (Sturm / LDL^T sign count)
int count_below(const std::vector<double>& a, const std::vector<double>& b, double x) {
  int count = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double off = i ? b[i - 1] : 0.0;
    d = a[i] - x - off * off / d;
    if (d == 0.0) d = 1e-300;
    if (d < 0) ++count;
  }
  return count;
}

// angular kernel with the log asymptotic spliced in where the elliptic
// parameter rounds to 1: K(m) -> ln(4 (r + r') / |r - r'|), relative error
// O(1 - m)
double safe_kernel(double r, double rp) {
  double sum = r + rp, diff = std::abs(r - rp);
  if (diff < 1e-6 * sum) return 4.0 / sum * std::log(4.0 * sum / diff);
  return qdot::coulomb::angular_kernel(r, rp);
}

}  // namespace

double tridiag_eigenvalue(const std::vector<double>& a, const std::vector<double>& b,
                          int index) {
  if (a.empty() || index < 0 || index >= (int)a.size())
    throw std::invalid_argument("tridiag_eigenvalue: bad index");
  double lo = a[0], hi = a[0];
  for (std::size_t i = 0; i < a.size(); ++i) {
    double off = (i ? std::abs(b[i - 1]) : 0.0) + (i + 1 < a.size() ? std::abs(b[i]) : 0.0);
    lo = std::min(lo, a[i] - off);
    hi = std::max(hi, a[i] + off);
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14 * (std::abs(lo) + std::abs(hi) + 1); ++it) {
    double mid = 0.5 * (lo + hi);
    if (count_below(a, b, mid) > index)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

double radial_eigenvalue(double c_kin, const std::function<double(double)>& v,
                         double r_max, int m, int index) {
  // half-offset cells r_i = (i + 1/2) h with flux faces at i h; the inner
  // face has radius 0, so the axis needs no boundary condition
  const double h = r_max / m;
  std::vector<double> a(m), b(m - 1);
  for (int i = 0; i < m; ++i) {
    double r = (i + 0.5) * h;
    double f_lo = i * h, f_hi = (i + 1) * h;
    a[i] = c_kin * (f_lo + f_hi) / (r * h * h) + v(r);
    if (i + 1 < m) b[i] = -c_kin * f_hi / (h * h * std::sqrt(r * (r + h)));
  }
  return tridiag_eigenvalue(a, b, index);
}

double radial_eigenvalue_rich(double c_kin, const std::function<double(double)>& v,
                              double r_max, int m, int index) {
  double e1 = radial_eigenvalue(c_kin, v, r_max, m, index);
  double e2 = radial_eigenvalue(c_kin, v, r_max, 2 * m, index);
  return (4.0 * e2 - e1) / 3.0;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double fa,
                        double b, double fb, double fm, double whole, double tol,
                        int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol,
                 int max_depth) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, fa, b, fb, fm, whole, tol, max_depth);
}

double kernel_cell_average(double r, double h, double tol) {
  // split at the singular point r' = r and substitute r' = r +- s^2 so the
  // log singularity becomes s log s -> 0
  auto below = [r](double s) {
    double rp = r - s * s;
    return rp <= 0 || rp == r ? 0.0 : 2.0 * s * safe_kernel(r, rp);
  };
  auto above = [r](double s) {
    return s == 0 ? 0.0 : 2.0 * s * safe_kernel(r, r + s * s);
  };
  double w = std::sqrt(0.5 * h);
  double lo = integrate([&](double s) { return s == 0 ? 0.0 : below(s); }, 0, w, tol);
  double hi = integrate(above, 0, w, tol);
  return (lo + hi) / h;
}

double coulomb_energy_adaptive(const std::function<double(double)>& rho, double r_max,
                               double tol) {
  auto phi = [&](double r) {
    auto piece = [&](double s, int sign) {
      double rp = r + sign * s * s;
      if (rp <= 0 || s == 0 || rp == r) return 0.0;
      return 2.0 * s * safe_kernel(r, rp) * rho(rp) * rp;
    };
    double v = 0.0;
    if (r > 0)
      v += integrate([&](double s) { return piece(s, -1); }, 0, std::sqrt(r), tol);
    v += integrate([&](double s) { return piece(s, +1); }, 0, std::sqrt(r_max - r), tol);
    return v;
  };
  // D = 1/2 int rho Phi dx = 1/2 int_0^R 2 pi r rho(r) Phi(r) dr
  return 0.5 * integrate([&](double r) { return 2.0 * M_PI * r * rho(r) * phi(r); }, 0,
                         r_max, tol * 10);
}

}  // namespace oracles
