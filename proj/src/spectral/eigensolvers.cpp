#include "gaugelab/spectral/eigensolvers.hpp"

#include <lapacke.h>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "gaugelab/core/error.hpp"

namespace gaugelab::spectral {

using lattice::cplx;
using lattice::StencilOperator;
using Mat = Eigen::MatrixXcd;

namespace {

Mat apply_block(const StencilOperator& H, const Mat& X) {
  Mat Y(X.rows(), X.cols());
  const auto n = static_cast<std::size_t>(X.rows());
  for (Eigen::Index j = 0; j < X.cols(); ++j)
    H.apply(std::span<const cplx>(X.col(j).data(), n), std::span<cplx>(Y.col(j).data(), n));
  return Y;
}

void orthonormalize(Mat& X) {
  Eigen::HouseholderQR<Mat> qr(X);
  X = qr.householderQ() * Mat::Identity(X.rows(), X.cols());
}

double residual_norm(const StencilOperator& H, const std::vector<cplx>& v, double lambda) {
  std::vector<cplx> Hv(v.size());
  H.apply(v, Hv);
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) acc += std::norm(Hv[i] - lambda * v[i]);
  return std::sqrt(acc);
}

}  // namespace

EigenPairs tridiagonal_eigenpairs(const StencilOperator& H, int count) {
  if (H.grid.dim() != 1) throw InvalidInput("tridiagonal eigensolver needs a 1D operator");
  const int n = static_cast<int>(H.grid.size());
  if (count < 1 || count > n) throw InvalidInput("requested eigenpair count out of range");

  std::vector<double> d(n), e(n, 0.0), theta(n, 0.0);
  for (int i = 0; i < n; ++i) d[i] = H.diag[i].real();
  for (int i = 0; i + 1 < n; ++i) {
    const cplx b = H.up_x[i];
    e[i] = std::abs(b);
    theta[i + 1] = theta[i] - std::arg(b);
  }

  std::vector<double> w(n), z(static_cast<std::size_t>(n) * count);
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(count));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, d.data(), e.data(), 0.0, 0.0, 1, count, 0.0,
                                         &found, w.data(), z.data(), n, isuppz.data());
  if (info != 0 || found != count) throw ConvergenceError("tridiagonal eigensolver (dstevr)", 1, static_cast<double>(info));

  EigenPairs out;
  out.method = "tridiagonal";
  out.iterations = 1;
  for (int k = 0; k < count; ++k) {
    std::vector<cplx> v(n);
    for (int i = 0; i < n; ++i) v[i] = std::polar(z[static_cast<std::size_t>(k) * n + i], theta[i]);
    out.values.push_back(w[k]);
    out.vectors.push_back(std::move(v));
  }
  return out;
}

namespace {

// Rayleigh-Ritz plus Chebyshev filtering on an orthonormal start block X.
EigenPairs chebyshev_refine(const StencilOperator& H, Mat X, int count, const EigenOptions& opt, const char* method,
                            int iterations_so_far) {
  const auto n = X.rows();
  const auto k = X.cols();
  const double upper = H.gershgorin_bound();
  Eigen::VectorXd lambda;
  Mat HX;
  auto rayleigh_ritz = [&]() {
    HX = apply_block(H, X);
    Mat G = X.adjoint() * HX;
    G = 0.5 * (G + G.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es(G);
    X = X * es.eigenvectors();
    HX = HX * es.eigenvectors();
    lambda = es.eigenvalues();
  };
  auto worst_residual = [&]() {
    double worst = 0.0;
    for (int j = 0; j < count; ++j) worst = std::max(worst, (HX.col(j) - lambda(j) * X.col(j)).norm());
    return worst;
  };

  rayleigh_ritz();
  double worst = worst_residual();
  int iter = 0;
  while (worst > opt.tolerance * std::max(1.0, std::fabs(lambda(count - 1)))) {
    if (++iter > opt.max_iterations) throw ConvergenceError("subspace eigensolver", iter - 1, worst);
    // Scaled Chebyshev filter damping [a, upper] and amplifying below a.
    const double a = lambda(k - 1);
    const double a0 = lambda(0);
    const double half = 0.5 * (upper - a);
    const double centre = 0.5 * (upper + a);
    double sigma = half / (a0 - centre);
    const double tau = 2.0 / sigma;
    Mat Y = (apply_block(H, X) - centre * X) * (sigma / half);
    for (int deg = 2; deg <= opt.filter_degree; ++deg) {
      const double sigma_next = 1.0 / (tau - sigma);
      Mat Ynext = (apply_block(H, Y) - centre * Y) * (2.0 * sigma_next / half) - (sigma * sigma_next) * X;
      X = std::move(Y);
      Y = std::move(Ynext);
      sigma = sigma_next;
    }
    X = std::move(Y);
    orthonormalize(X);
    rayleigh_ritz();
    worst = worst_residual();
  }

  EigenPairs out;
  out.method = method;
  out.iterations = iterations_so_far + iter;
  for (int j = 0; j < count; ++j) {
    out.values.push_back(lambda(j));
    out.vectors.emplace_back(X.col(j).data(), X.col(j).data() + n);
  }
  return out;
}

int guard_count(int count, const EigenOptions& opt) { return opt.guard_vectors > 0 ? opt.guard_vectors : std::max(8, count / 2); }

Eigen::SparseMatrix<cplx> to_sparse(const StencilOperator& H, double shift) {
  const std::size_t nx = H.grid.nx(), ny = H.grid.ny();
  std::vector<Eigen::Triplet<cplx>> t;
  t.reserve(H.grid.size() * 5);
  for (std::size_t idx = 0; idx < H.grid.size(); ++idx) {
    const auto r = static_cast<Eigen::Index>(idx);
    const std::size_t i = idx % nx, j = idx / nx;
    t.emplace_back(r, r, H.diag[idx] - shift);
    if (i + 1 < nx) t.emplace_back(r, r + 1, H.up_x[idx]);
    if (i > 0) t.emplace_back(r, r - 1, H.dn_x[idx]);
    if (H.grid.dim() == 2) {
      const auto step = static_cast<Eigen::Index>(nx);
      if (j + 1 < ny) t.emplace_back(r, r + step, H.up_y[idx]);
      if (j > 0) t.emplace_back(r, r - step, H.dn_y[idx]);
    }
  }
  const auto n = static_cast<Eigen::Index>(H.grid.size());
  Eigen::SparseMatrix<cplx> M(n, n);
  M.setFromTriplets(t.begin(), t.end());
  return M;
}

double gershgorin_lower(const StencilOperator& H) {
  double b = std::numeric_limits<double>::infinity();
  for (std::size_t idx = 0; idx < H.grid.size(); ++idx) {
    double off = std::abs(H.up_x[idx]) + std::abs(H.dn_x[idx]);
    if (H.grid.dim() == 2) off += std::abs(H.up_y[idx]) + std::abs(H.dn_y[idx]);
    b = std::min(b, H.diag[idx].real() - off);
  }
  return b;
}

}  // namespace

EigenPairs lanczos_eigenpairs(const StencilOperator& H, int count, const EigenOptions& opt) {
  const auto n = static_cast<Eigen::Index>(H.grid.size());
  if (count < 1 || count > n) throw InvalidInput("requested eigenpair count out of range");
  const Eigen::Index k = std::min<Eigen::Index>(n, count + guard_count(count, opt));

  const double sigma = gershgorin_lower(H) - 1.0;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<cplx>, Eigen::Lower> ldlt(to_sparse(H, sigma));
  if (ldlt.info() != Eigen::Success) throw ConvergenceError("sparse LDL factorization", 0, sigma);
  // ||(H - sigma) r|| / theta must stay below the target for a Ritz residual r.
  const double spread = H.gershgorin_bound() - sigma;

  const Eigen::Index max_steps = std::min<Eigen::Index>(n, std::max<Eigen::Index>(opt.max_lanczos_steps, 2 * k));
  Mat V(n, std::min<Eigen::Index>(max_steps + 1, 2 * k + 32));
  std::vector<double> alpha, beta;

  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = cplx(normal(rng), normal(rng));
  V.col(0) = v / v.norm();

  Eigen::MatrixXd ritz_vectors;
  Eigen::VectorXd theta;
  Eigen::Index m = 0;
  bool converged = false;
  while (!converged && m < max_steps) {
    Eigen::VectorXcd w = ldlt.solve(V.col(m));
    alpha.push_back(V.col(m).dot(w).real());
    // Full reorthogonalization, applied twice.
    for (int pass = 0; pass < 2; ++pass) w -= V.leftCols(m + 1) * (V.leftCols(m + 1).adjoint() * w);
    beta.push_back(w.norm());
    ++m;
    if (m + 1 > V.cols()) V.conservativeResize(Eigen::NoChange, std::min<Eigen::Index>(max_steps + 1, 2 * V.cols()));
    if (beta.back() == 0.0) {
      converged = m >= k;
      if (!converged) throw ConvergenceError("lanczos invariant subspace smaller than requested", static_cast<int>(m), 0.0);
    } else {
      V.col(m) = w / beta.back();
    }
    if (converged || (m >= k && (m % 8 == 0 || m == max_steps))) {
      Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
      for (Eigen::Index i = 0; i < m; ++i) {
        T(i, i) = alpha[i];
        if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
      theta = es.eigenvalues();
      ritz_vectors = es.eigenvectors();
      converged = true;
      for (int j = 0; j < count && converged; ++j) {
        const Eigen::Index col = m - 1 - j;  // largest theta <-> lowest E
        const double r = std::fabs(beta[m - 1] * ritz_vectors(m - 1, col));
        if (spread * r / theta(col) > 0.1 * opt.tolerance * std::max(1.0, sigma + 1.0 / theta(m - count))) converged = false;
      }
    }
  }

  Mat X(n, k);
  for (Eigen::Index j = 0; j < k; ++j) X.col(j) = V.leftCols(m) * ritz_vectors.col(m - 1 - j).cast<cplx>();
  orthonormalize(X);
  return chebyshev_refine(H, std::move(X), count, opt, "shift-invert-lanczos", static_cast<int>(m));
}

EigenPairs subspace_eigenpairs(const StencilOperator& H, int count, const EigenOptions& opt) {
  const auto n = static_cast<Eigen::Index>(H.grid.size());
  if (count < 1 || count > n) throw InvalidInput("requested eigenpair count out of range");
  const Eigen::Index k = std::min<Eigen::Index>(n, count + guard_count(count, opt));

  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat X(n, k);
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < n; ++i) X(i, j) = cplx(normal(rng), normal(rng));
  orthonormalize(X);
  return chebyshev_refine(H, std::move(X), count, opt, "chebyshev-subspace", 0);
}

EigenPairs lowest_eigenpairs(const StencilOperator& H, int count, const EigenOptions& opt) {
  using M = EigenOptions::Method;
  const M method = opt.method == M::automatic ? (H.grid.dim() == 1 ? M::tridiagonal : M::lanczos) : opt.method;
  EigenPairs out = method == M::tridiagonal ? tridiagonal_eigenpairs(H, count)
                   : method == M::lanczos   ? lanczos_eigenpairs(H, count, opt)
                                            : subspace_eigenpairs(H, count, opt);

  const double scale = std::max(1.0, std::fabs(out.values.back()));
  for (std::size_t j = 0; j < out.values.size(); ++j) {
    const double r = residual_norm(H, out.vectors[j], out.values[j]);
    if (r > opt.tolerance * scale) throw ConvergenceError(std::string(out.method) + " eigenpair residual", out.iterations, r);
  }
  return out;
}

}  // namespace gaugelab::spectral
