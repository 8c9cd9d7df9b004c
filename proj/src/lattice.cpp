#include "qdot/lattice.hpp"

#include <cmath>
#include <random>
#include <Eigen/Sparse>
#include <stdexcept>

namespace qdot::lattice {

MagneticOperator build_operator(const MagneticLattice& lat,
                                const std::function<double(double, double)>& potential) {
  if (lat.n < 2 || lat.half_width <= 0)
    throw std::invalid_argument("build_operator: need n >= 2 and positive box");
  MagneticOperator op;
  op.lat = lat;
  const int n = lat.n;
  const double h = lat.spacing();
  op.diagonal.resize(op.dim());
  op.phase_x.resize(op.dim());
  op.phase_y.resize(op.dim());
  for (int j = 0; j < n; ++j) {
    double y = lat.coord(j);
    for (int i = 0; i < n; ++i) {
      double x = lat.coord(i);
      Eigen::Index s = (Eigen::Index)j * n + i;
      op.diagonal(s) = 2.0 / (h * h) + (potential ? potential(x, y) : 0.0);
      // symmetric gauge A = (B/2)(-y, x); theta = A . dl along the bond,
      // plaquette sum = B h^2 (continuum flux)
      op.phase_x(s) = std::polar(1.0, -0.5 * lat.b_field * y * h);
      op.phase_y(s) = std::polar(1.0, 0.5 * lat.b_field * x * h);
    }
  }
  return op;
}

void MagneticOperator::apply(const VectorXcd& x, VectorXcd& y) const {
  const int n = lat.n;
  const double h = lat.spacing();
  const double t = 0.5 / (h * h);  // hopping amplitude of (1/2)(i grad - A)^2
  y = diagonal.array() * x.array();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      Eigen::Index s = (Eigen::Index)j * n + i;
      if (i + 1 < n) {
        y(s) -= t * phase_x(s) * x(s + 1);
        y(s + 1) -= t * std::conj(phase_x(s)) * x(s);
      }
      if (j + 1 < n) {
        y(s) -= t * phase_y(s) * x(s + n);
        y(s + n) -= t * std::conj(phase_y(s)) * x(s);
      }
    }
}

namespace {

using Cplx = std::complex<double>;

// H - sigma as a sparse matrix (5-point stencil with Peierls phases)
Eigen::SparseMatrix<Cplx> shifted_matrix(const MagneticOperator& op, double sigma) {
  const Eigen::Index dim = op.dim();
  const int n = op.lat.n;
  const double h = op.lat.spacing();
  const double t = 0.5 / (h * h);
  std::vector<Eigen::Triplet<Cplx>> trip;
  trip.reserve(5 * dim);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      Eigen::Index s = (Eigen::Index)j * n + i;
      trip.emplace_back(s, s, Cplx(op.diagonal(s) - sigma, 0.0));
      if (i + 1 < n) {
        trip.emplace_back(s, s + 1, -t * op.phase_x(s));
        trip.emplace_back(s + 1, s, -t * std::conj(op.phase_x(s)));
      }
      if (j + 1 < n) {
        trip.emplace_back(s, s + n, -t * op.phase_y(s));
        trip.emplace_back(s + n, s, -t * std::conj(op.phase_y(s)));
      }
    }
  Eigen::SparseMatrix<Cplx> m(dim, dim);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

VectorXcd start_vector(Eigen::Index dim) {
  std::mt19937_64 rng(0x5eed5eedULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = std::complex<double>(gauss(rng), gauss(rng));
  v.normalize();
  return v;
}

// Gershgorin bound below the whole spectrum, with slack
double below_spectrum_shift(const MagneticOperator& op) {
  const double h = op.lat.spacing();
  const double t = 0.5 / (h * h);
  return (op.diagonal.minCoeff() - 4.0 * t) - 0.05 * op.diagonal.cwiseAbs().maxCoeff();
}

}  // namespace

std::vector<double> eigenvalues_below(const MagneticOperator& op, double bound,
                                      int max_steps, double tol) {
  // Shift-invert Lanczos with the shift below the spectrum: the discrete
  // states below `bound` become the top of (H - sigma)^-1 and converge long
  // before the quasi-continuum that starts right at the bound.  Terminates
  // when the below-bound count and the deficiency sum are stable.
  const Eigen::Index dim = op.dim();
  const double sigma = below_spectrum_shift(op);
  Eigen::SparseLU<Eigen::SparseMatrix<Cplx>> lu(shifted_matrix(op, sigma));
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("eigenvalues_below: factorization failed");

  const int m_max = (int)std::min<Eigen::Index>(std::max(20, max_steps), dim);
  Eigen::MatrixXcd basis(dim, m_max);
  std::vector<double> alpha, beta;
  VectorXcd w(dim);

  std::vector<double> accepted;
  double last_sum = -1.0;
  std::size_t last_count = (std::size_t)-1;
  int stable_checks = 0;
  basis.col(0) = start_vector(dim);
  for (int k = 0; k < m_max; ++k) {
    w = lu.solve(basis.col(k));
    if (k > 0) w -= beta[k - 1] * basis.col(k - 1);
    double a = std::real(basis.col(k).dot(w));
    alpha.push_back(a);
    w -= a * basis.col(k);
    for (int pass = 0; pass < 2; ++pass)
      w -= basis.leftCols(k + 1) * (basis.leftCols(k + 1).adjoint() * w);
    double b = w.norm();

    bool last = k + 1 == m_max || b < 1e-14;
    if (last || (k >= 5 && k % 5 == 0)) {
      int m = k + 1;
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
      for (int i = 0; i < m; ++i) {
        t(i, i) = alpha[i];
        if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
      accepted.clear();
      double sum = 0.0, pending = 0.0;
      for (int q = m - 1; q >= 0; --q) {  // descending theta = ascending mu
        double theta = es.eigenvalues()(q);
        if (theta <= 0) break;
        double mu = sigma + 1.0 / theta;
        if (mu >= bound) break;
        // eigenvalue error in mu from the theta-space residual
        double err = b * std::abs(es.eigenvectors()(m - 1, q)) / (theta * theta);
        if (err <= tol * std::max(1.0, std::abs(bound)) || err <= 0.05 * (bound - mu))
          accepted.push_back(mu), sum += bound - mu;
        else
          pending += (bound - mu) + err;  // bound on what is still unresolved
      }
      // an attractive tail drags the whole quasi-continuum a hair below the
      // bound, so full convergence of every state never happens; stop once
      // the resolved deficiency sum is stable and the unresolved remainder
      // cannot matter
      bool ok = pending <= 1e-3 * std::max(1.0, sum);
      if (ok && std::abs(sum - last_sum) <= 1e-4 * std::max(1.0, sum)) {
        if (++stable_checks >= 2) return accepted;
      } else {
        stable_checks = 0;
      }
      last_count = accepted.size();
      last_sum = sum;
      if (last) {
        if (ok) return accepted;
        throw std::runtime_error("eigenvalues_below: Lanczos failed to converge");
      }
    }
    beta.push_back(b);
    if (k + 1 < m_max) basis.col(k + 1) = w / b;
  }
  return accepted;
}

double lowest_eigenvalue(const MagneticOperator& op, int max_steps, double tol) {
  // Shift-invert Lanczos.  Plain Lanczos creeps toward the bottom through a
  // dense cloud of box-edge states; factoring H - sigma with sigma below the
  // spectrum compresses everything above the lowest Landau cluster and the
  // minimum converges in a handful of iterations.
  const Eigen::Index dim = op.dim();
  const double sigma = below_spectrum_shift(op);
  Eigen::SparseLU<Eigen::SparseMatrix<Cplx>> lu(shifted_matrix(op, sigma));
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("lowest_eigenvalue: factorization failed");

  const int m_max = (int)std::min<Eigen::Index>(std::max(20, max_steps), dim);
  Eigen::MatrixXcd basis(dim, m_max);
  std::vector<double> alpha, beta;
  VectorXcd w(dim);
  double prev_lambda = 1e300;
  basis.col(0) = start_vector(dim);
  for (int k = 0; k < m_max; ++k) {
    w = lu.solve(basis.col(k));
    if (k > 0) w -= beta[k - 1] * basis.col(k - 1);
    double a = std::real(basis.col(k).dot(w));
    alpha.push_back(a);
    w -= a * basis.col(k);
    for (int pass = 0; pass < 2; ++pass)
      w -= basis.leftCols(k + 1) * (basis.leftCols(k + 1).adjoint() * w);
    double b = w.norm();

    if (k >= 2 || b < 1e-14) {
      int mm = k + 1;
      Eigen::MatrixXd tt = Eigen::MatrixXd::Zero(mm, mm);
      for (int i = 0; i < mm; ++i) {
        tt(i, i) = alpha[i];
        if (i + 1 < mm) tt(i, i + 1) = tt(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tt);
      double theta = es.eigenvalues()(mm - 1);  // largest of (H - sigma)^-1
      double lambda = sigma + 1.0 / theta;
      if (std::abs(prev_lambda - lambda) <= tol * std::max(std::abs(lambda), 1.0))
        return lambda;
      prev_lambda = lambda;
      if (b < 1e-14) return lambda;
    }
    beta.push_back(b);
    if (k + 1 < m_max) basis.col(k + 1) = w / b;
  }
  throw std::runtime_error("lowest_eigenvalue: Lanczos failed to converge");
}

double bare_ground_energy(const MagneticLattice& lat, int max_steps) {
  return lowest_eigenvalue(build_operator(lat, nullptr), max_steps);
}

}  // namespace qdot::lattice
