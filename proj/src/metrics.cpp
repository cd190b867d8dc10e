#include "lrr/metrics.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace lrr {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace

Matrix procrustes_align(const Matrix& u, const Matrix& ustar) {
  require(u.rows() == ustar.rows() && u.cols() == ustar.cols(),
          "procrustes_align: shape mismatch");
  Eigen::JacobiSVD<Matrix> svd(ustar.transpose() * u,
                               Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

double dist_to_orbit(const Matrix& u, const Matrix& ustar) {
  return (u - ustar * procrustes_align(u, ustar)).norm();
}

double dist_to_orbit_stacked(const Matrix& w, const Matrix& wstar) {
  return dist_to_orbit(w, wstar);
}

RecoveryReport recovery_report(const Matrix& xhat, const Matrix& xstar,
                               double threshold) {
  require(xhat.rows() == xstar.rows() && xhat.cols() == xstar.cols(),
          "recovery_report: shape mismatch");
  require(xstar.norm() > 0.0, "recovery_report: zero ground truth");
  RecoveryReport report;
  report.threshold = threshold;
  report.rel_error = (xhat - xstar).norm() / xstar.norm();
  report.success = report.rel_error <= threshold;
  return report;
}

RecoveryReport recovery_report(const Matrix& xhat, const Matrix& xstar,
                               const Matrix& u, const Matrix& ustar,
                               double threshold) {
  RecoveryReport report = recovery_report(xhat, xstar, threshold);
  report.dist_orbit = dist_to_orbit(u, ustar);
  return report;
}

DistanceBoundCheck check_distance_bound(const Matrix& u, const Matrix& ustar) {
  require(u.rows() == ustar.rows() && u.cols() == ustar.cols(),
          "check_distance_bound: shape mismatch");
  const Matrix xstar = ustar * ustar.transpose();
  const int r = static_cast<int>(ustar.cols());
  Eigen::JacobiSVD<Matrix> svd(xstar);
  const double sigma_r = svd.singularValues()(r - 1);

  DistanceBoundCheck check;
  const double dist = dist_to_orbit(u, ustar);
  // sigma_r(X*) enters to the first power (= sigma_r(U*)^2); the squared form
  // is dimensionally inconsistent and fails on random draws.
  check.lhs = 2.0 * (std::sqrt(2.0) - 1.0) * sigma_r * dist * dist;
  check.rhs = (u * u.transpose() - xstar).squaredNorm();
  check.holds = check.lhs <= check.rhs * (1.0 + 1e-10) + 1e-300;
  return check;
}

}  // namespace lrr
