#pragma once

#include <Eigen/Dense>

#include "lrr/operators.hpp"

namespace lrr {

/// Optimization variable of the PSD formulation.
struct Factor {
  Matrix U;  // n x r
};

/// Optimization variable of the general formulation, conceptually stacked as
/// W = [U; V] of shape (n1+n2) x r.
struct FactorPair {
  Matrix U;  // n1 x r
  Matrix V;  // n2 x r

  Matrix stacked() const;
  static FactorPair from_stacked(const Matrix& w, int n1, int n2);
};

// --- objective values and subgradients -----------------------------------

/// (1/m) * ||y - A(U U^T)||_1. PSD instances only.
double f_value(const ProblemInstance& inst, const Matrix& u);

/// Deterministic subgradient selection of f, with Sign(0) := 0:
/// D = (1/m) [ (A*(sigma))^T U + A*(sigma) U ], sigma = Sign(A(UU^T) - y).
Matrix f_subgrad(const ProblemInstance& inst, const Matrix& u);

/// (1/m) * ||y - A(U V^T)||_1 + lambda * ||U^T U - V^T V||_F.
double g_value(const ProblemInstance& inst, const FactorPair& w, double lambda);
double g_value(const ProblemInstance& inst, const Matrix& w_stacked, double lambda);

/// Stacked subgradient: data term [(1/m) A*(sigma) V; (1/m) (A*(sigma))^T U]
/// plus lambda * [U; -V] (Psi + Psi^T) with Psi = C/||C||_F (Psi = 0 at C = 0),
/// C = U^T U - V^T V.
Matrix g_subgrad(const ProblemInstance& inst, const FactorPair& w, double lambda);
Matrix g_subgrad(const ProblemInstance& inst, const Matrix& w_stacked, double lambda);

/// Smooth baseline (1/m) * ||y - A(U U^T)||_2^2 and its exact gradient.
double xi_value(const ProblemInstance& inst, const Matrix& u);
Matrix xi_grad(const ProblemInstance& inst, const Matrix& u);

// --- closed-form regularity parameters ------------------------------------

/// Largest outlier ratio with a positive sharpness constant:
/// 1/2 - delta / (sqrt(2/pi) - delta).
double max_outlier_ratio(double delta);

/// Exponent convention for sigma_r(X*) in the sharpness constants. The proof
/// chains yield sigma_r^{1/2} (the factor-matrix singular value); the stated
/// constants carry sigma_r. Both agree at sigma_r = 1. proof_sqrt is the
/// default: it is the dimensionally consistent form and the one the distance
/// bound supports numerically.
enum class SigmaExponent { proof_sqrt, as_stated };

/// PSD sharpness constant
/// alpha = sqrt(2(sqrt(2)-1)) * (2(1-p)(sqrt(2/pi)-delta) - (sqrt(2/pi)+delta)) * sigma_r^e.
/// Requires 0 <= delta < sqrt(2/pi)/3 and p strictly below max_outlier_ratio.
double sharpness_psd(double p, double delta, double sigma_r,
                     SigmaExponent mode = SigmaExponent::proof_sqrt);

/// PSD weak-convexity constant tau = 2 (sqrt(2/pi) + delta).
double weakconvexity_psd(double delta);

/// PSD subgradient-norm bound kappa = 2 (sqrt(2/pi)+delta) (||U*||_F + 2 alpha/tau).
double kappa_psd(double delta, double ustar_fro, double alpha, double tau);

/// General-case sharpness
/// alpha = sqrt(sqrt(2)-1) * min{zeta(p,delta), 2 lambda} * sigma_r^e,
/// zeta = 2(1-p)(sqrt(2/pi)-delta) - (sqrt(2/pi)+delta).
double sharpness_general(double p, double delta, double lambda, double sigma_r,
                         SigmaExponent mode = SigmaExponent::proof_sqrt);

/// General-case weak convexity tau = sqrt(2/pi) + delta + 2 lambda.
double weakconvexity_general(double delta, double lambda);

/// General-case subgradient bound
/// kappa = max{sqrt(2/pi)+delta, lambda} (||W*||_F + 2 alpha/tau).
double kappa_general(double delta, double lambda, double wstar_fro, double alpha,
                     double tau);

/// Balancing weight maximizing the linear-convergence region: zeta/2.
double lambda_recommended(double p, double delta);

/// Bundle of regularity constants for one problem configuration.
struct RegularityParams {
  double alpha = 0.0;
  double tau = 0.0;
  double kappa = 0.0;
  double delta = 0.0;
  double p = 0.0;
  double sigma_r = 0.0;
  double lambda = 0.0;                              // general case only
  SigmaExponent mode = SigmaExponent::proof_sqrt;   // general case only
  bool general = false;

  double radius() const { return 2.0 * alpha / tau; }  // linear-convergence ball
};

RegularityParams psd_regularity(double p, double delta, double sigma_r,
                                double ustar_fro,
                                SigmaExponent mode = SigmaExponent::proof_sqrt);
RegularityParams general_regularity(double p, double delta, double lambda,
                                    double sigma_r, double wstar_fro,
                                    SigmaExponent mode = SigmaExponent::proof_sqrt);

// --- landscape slices -------------------------------------------------------

enum class LossKind { l1, l2 };

struct GridSpec {
  double u1_min = -1.0, u1_max = 1.0;
  int u1_steps = 81;
  double u2_min = -1.0, u2_max = 1.0;
  int u2_steps = 81;
  int coord1 = 0, coord2 = 1;  // which entries of the r=1 factor to sweep
  double cap = 16.0;           // value reported where loss = 0
};

struct LandscapeGrid {
  std::vector<double> u1, u2;
  Matrix value;  // value(i,j) = -log(loss) at (u1[i], u2[j]), clamped at cap
};

/// Evaluates -log(loss(U)) over a rectangular slice of a rank-1 factor. Off-slice
/// coordinates are taken from `base` (zeros when null).
LandscapeGrid landscape_slice(const ProblemInstance& inst, const GridSpec& grid,
                              LossKind loss, const Matrix* base = nullptr);

}  // namespace lrr
