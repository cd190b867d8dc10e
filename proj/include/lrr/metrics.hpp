#pragma once

#include <Eigen/Dense>
#include <limits>

namespace lrr {

using Matrix = Eigen::MatrixXd;

/// Orthogonal r x r matrix minimizing ||U - Ustar R||_F, i.e. the polar factor
/// P Q^T of the SVD Ustar^T U = P S Q^T.
Matrix procrustes_align(const Matrix& u, const Matrix& ustar);

/// Frobenius distance from U to the orbit {Ustar R : R orthogonal}.
double dist_to_orbit(const Matrix& u, const Matrix& ustar);

/// Same construction on stacked (n1+n2) x r factors.
double dist_to_orbit_stacked(const Matrix& w, const Matrix& wstar);

struct RecoveryReport {
  double dist_orbit = std::numeric_limits<double>::quiet_NaN();
  double rel_error = 0.0;  // ||Xhat - Xstar||_F / ||Xstar||_F
  bool success = false;    // rel_error <= threshold
  double threshold = 1e-6;
};

RecoveryReport recovery_report(const Matrix& xhat, const Matrix& xstar,
                               double threshold = 1e-6);

/// Variant that also reports the factor orbit distance.
RecoveryReport recovery_report(const Matrix& xhat, const Matrix& xstar,
                               const Matrix& u, const Matrix& ustar,
                               double threshold = 1e-6);

/// Both sides of the factored-distance inequality
/// 2(sqrt(2)-1) sigma_r(X*) dist^2(U, orbit) <= ||U U^T - X*||_F^2,
/// which ties orbit distance to reconstruction error for PSD factorizations.
/// sigma_r(X*) = sigma_r(U*)^2 is the r-th singular value of the product.
struct DistanceBoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

DistanceBoundCheck check_distance_bound(const Matrix& u, const Matrix& ustar);

}  // namespace lrr
