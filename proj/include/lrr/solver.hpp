#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <variant>
#include <vector>

namespace lrr {

using Matrix = Eigen::MatrixXd;

// --- step-size schedules ----------------------------------------------------

struct Geometric {
  double mu0 = 1.0;   // > 0
  double rho = 0.99;  // in (0,1)
};

struct Polyak {
  double f_star = 0.0;  // optimal value; the method stops at a zero subgradient
};

struct PiecewiseGeometric {
  double mu_top = 1.0;   // > 0
  double factor = 0.5;   // in (0,1)
  long period = 50;      // >= 1
};

struct Backtracking {
  double eta = 1e-3;   // > 0
  double rho = 0.85;   // in (0,1)
  double mu0 = 1.0;    // > 0
  // Literal reading of the published stopping rule (stop once sufficient
  // decrease FAILS). Off by default; the standard Armijo-style reading is used.
  bool literal_rule = false;
};

using StepSchedule = std::variant<Geometric, Polyak, PiecewiseGeometric, Backtracking>;

double step_geometric(long k, double mu0, double rho);
double step_polyak(double f_k, double f_star, double gnorm);
double step_piecewise(long k, double mu_top, double factor, long period);

/// Shrinks mu_prev by rho until the sufficient-decrease test
/// value(x - mu d) <= value(x) - eta * mu * ||d||_F holds (or, in literal mode,
/// until it fails), capped at kBacktrackCap reductions.
double step_backtracking(const std::function<double(const Matrix&)>& value_fn,
                         const Matrix& x, const Matrix& d, double mu_prev,
                         double eta, double rho, bool literal_rule = false,
                         bool* cap_hit = nullptr);

inline constexpr int kBacktrackCap = 60;

// --- subgradient method -------------------------------------------------------

enum class TerminalStatus { max_iters, zero_subgradient, diverged };

struct TraceRecord {
  long k = 0;
  double f = 0.0;
  double step = 0.0;
  double gnorm = 0.0;
  double dist = std::numeric_limits<double>::quiet_NaN();
};

struct SolverTrace {
  std::vector<TraceRecord> records;
  TerminalStatus status = TerminalStatus::max_iters;
  bool backtrack_cap_hit = false;
  long iterations = 0;  // update steps actually taken
  Matrix final_x;

  double final_dist() const {
    return records.empty() ? std::numeric_limits<double>::quiet_NaN()
                           : records.back().dist;
  }
  double final_f() const {
    return records.empty() ? std::numeric_limits<double>::quiet_NaN()
                           : records.back().f;
  }
};

struct SolveOptions {
  long max_iters = 1000;
  long record_stride = 1;                  // record every k-th iterate (plus the last)
  double divergence_threshold = 1e12;      // objective above this counts as diverged
  std::function<double(const Matrix&)> dist_fn;  // optional orbit distance hook
};

/// Iterates x_{k+1} = x_k - mu_k d_k with d_k from subgrad_fn and mu_k from the
/// schedule. A zero subgradient terminates Polyak runs and leaves the iterate
/// unchanged under the other schedules. Non-finite or huge objective values
/// terminate with diverged status.
SolverTrace subgm(const std::function<double(const Matrix&)>& value_fn,
                  const std::function<Matrix(const Matrix&)>& subgrad_fn,
                  const Matrix& x0, const StepSchedule& schedule,
                  const SolveOptions& options);

/// Fixed-step smooth descent with the same trace format.
SolverTrace gradient_descent(const std::function<double(const Matrix&)>& value_fn,
                             const std::function<Matrix(const Matrix&)>& grad_fn,
                             const Matrix& x0, double step,
                             const SolveOptions& options);

// --- schedule parameter bounds ---------------------------------------------

/// Largest admissible initial step:
/// (alpha^2 / (2 tau kappa^2)) (1 - max{(tau/alpha) dist0 - 1, 0}^2).
/// Unbounded (returns +inf) for convex problems (tau = 0).
double mu0_max(double alpha, double tau, double kappa, double dist0);

/// max{dist0, mu0 * max{kappa^2, 2 alpha^2} / alpha}.
double dist0_bar(double alpha, double kappa, double mu0, double dist0);

/// Smallest admissible geometric decay rate,
/// sqrt(1 - (2 alpha/d - tau) mu0 + (kappa^2/d^2) mu0^2) at d = max{dist0,
/// mu0 kappa^2/alpha}. Requires mu0 <= mu0_max and dist0 < 2 alpha / tau.
double rho_lower(double alpha, double tau, double kappa, double mu0, double dist0);

enum class ConvergenceRegime { case_I, case_II };  // dist0 <= alpha/tau or above

struct ScheduleBounds {
  double mu0_max = 0.0;
  double rho_lower = 0.0;
  double dist0_bar = 0.0;
  ConvergenceRegime regime = ConvergenceRegime::case_I;
};

ScheduleBounds schedule_bounds(double alpha, double tau, double kappa, double mu0,
                               double dist0);

struct RateCurvePoint {
  double mu0 = 0.0;
  double rho_lower = 0.0;
  double dist0_bar = 0.0;
};

/// Tabulates the decay-rate bound and reference distance over an initial-step
/// grid (no precondition enforcement; intended for plotting).
std::vector<RateCurvePoint> rho_curve(double alpha, double tau, double kappa,
                                      double dist0, const std::vector<double>& mu0_grid);

}  // namespace lrr
