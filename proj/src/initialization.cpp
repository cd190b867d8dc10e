#include "lrr/initialization.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "lrr/rng.hpp"

namespace lrr {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

// Sign convention: make the largest-magnitude entry of each left vector
// nonnegative (ties broken by lowest row index), flipping the right vector to
// match. Keeps factor output stable across runs and platforms.
void canonicalize_signs(Matrix& p, Matrix& q) {
  for (Eigen::Index c = 0; c < p.cols(); ++c) {
    Eigen::Index imax = 0;
    p.col(c).cwiseAbs().maxCoeff(&imax);
    if (p(imax, c) < 0.0) {
      p.col(c) = -p.col(c);
      q.col(c) = -q.col(c);
    }
  }
}

// Rank-r factor pair (P Pi^{1/2}, Q Pi^{1/2}) of a dense matrix. A symmetric
// input goes through the eigendecomposition with |eigenvalue| magnitudes.
InitResult factor_rank_r(const Matrix& e, int r, bool symmetric) {
  InitResult res;
  if (e.norm() == 0.0) {
    res.u0 = Matrix::Zero(e.rows(), r);
    res.v0 = Matrix::Zero(e.cols(), r);
    res.degenerate = true;
    return res;
  }
  if (symmetric) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(e);
    const Vector values = eig.eigenvalues();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return std::abs(values(a)) > std::abs(values(b));
    });
    Matrix p(e.rows(), r), q(e.rows(), r);
    for (int c = 0; c < r; ++c) {
      const Eigen::Index idx = order[static_cast<std::size_t>(c)];
      const double lam = values(idx);
      const double root = std::sqrt(std::abs(lam));
      p.col(c) = eig.eigenvectors().col(idx) * root;
      q.col(c) = eig.eigenvectors().col(idx) * (lam < 0.0 ? -root : root);
    }
    canonicalize_signs(p, q);
    res.u0 = p;
    res.v0 = q;
    return res;
  }
  Eigen::JacobiSVD<Matrix> svd(e, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Matrix p = svd.matrixU().leftCols(r);
  Matrix q = svd.matrixV().leftCols(r);
  canonicalize_signs(p, q);
  const Vector roots = svd.singularValues().head(r).cwiseSqrt();
  res.u0 = p * roots.asDiagonal();
  res.v0 = q * roots.asDiagonal();
  return res;
}

}  // namespace

double median_abs(const Vector& v) {
  require(v.size() >= 1, "median_abs: empty vector");
  std::vector<double> a(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) a[static_cast<std::size_t>(i)] = std::abs(v(i));
  std::sort(a.begin(), a.end());
  const std::size_t n = a.size();
  return n % 2 == 1 ? a[n / 2] : 0.5 * (a[n / 2 - 1] + a[n / 2]);
}

InitResult truncated_spectral_init(const SensingOperator& op, const Vector& y,
                                   int r, double beta) {
  require(op.m() >= 2, "truncated_spectral_init: need at least two measurements");
  require(y.size() == op.m(), "truncated_spectral_init: measurement length mismatch");
  require(r >= 1 && r <= std::min(op.n1(), op.n2()), "truncated_spectral_init: bad rank");
  require(beta > 0.0, "truncated_spectral_init: beta must be positive");

  const long half = op.m() / 2;
  const double threshold = beta * median_abs(y.tail(op.m() - half));

  // Masking is exact; dividing the summed estimate afterwards keeps this on
  // the same arithmetic path as the plain spectral start on the half sample.
  Vector masked = Vector::Zero(op.m());
  bool kept_any = false;
  for (long i = 0; i < half; ++i) {
    if (std::abs(y(i)) <= threshold) {
      masked(i) = y(i);
      kept_any = kept_any || y(i) != 0.0;
    }
  }
  const Matrix e = op.adjoint(masked) / static_cast<double>(half);
  InitResult res = factor_rank_r(e, r, op.symmetric());
  res.degenerate = !kept_any || res.degenerate;
  return res;
}

InitResult spectral_init(const SensingOperator& op, const Vector& y, int r) {
  require(y.size() == op.m(), "spectral_init: measurement length mismatch");
  require(r >= 1 && r <= std::min(op.n1(), op.n2()), "spectral_init: bad rank");
  const Matrix e = op.adjoint(y) / static_cast<double>(op.m());
  return factor_rank_r(e, r, op.symmetric());
}

Matrix random_init(int n, int r, double scale, std::uint64_t seed) {
  require(n >= 1 && r >= 1 && scale >= 0.0, "random_init: bad arguments");
  rng::Stream stream = rng::substream(seed, rng::kTagInit, 0);
  Matrix u(n, r);
  for (int c = 0; c < r; ++c)
    for (int i = 0; i < n; ++i) u(i, c) = scale * stream.normal();
  return u;
}

double beta_default(int r, double cbar) {
  require(r >= 1, "beta_default: rank must be >= 1");
  require(cbar >= 1.0, "beta_default: cbar is always >= 1");
  return 2.0 * std::log(std::pow(static_cast<double>(r), 0.25) * std::sqrt(cbar) + 20.0);
}

double cbar(const Matrix& xstar, int r) {
  require(r >= 1 && r <= std::min(xstar.rows(), xstar.cols()), "cbar: bad rank");
  Eigen::JacobiSVD<Matrix> svd(xstar);
  const double sigma_r = svd.singularValues()(r - 1);
  require(sigma_r > 0.0, "cbar: sigma_r vanishes");
  return xstar.norm() / (std::sqrt(static_cast<double>(r)) * sigma_r);
}

}  // namespace lrr
