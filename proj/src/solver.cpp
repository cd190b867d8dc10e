#include "lrr/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lrr {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace

double step_geometric(long k, double mu0, double rho) {
  require(k >= 0 && mu0 > 0.0 && rho > 0.0 && rho < 1.0, "step_geometric: bad arguments");
  return std::pow(rho, static_cast<double>(k)) * mu0;
}

double step_polyak(double f_k, double f_star, double gnorm) {
  require(gnorm > 0.0, "step_polyak: zero subgradient");
  require(f_k >= f_star, "step_polyak: objective below the optimal value");
  return (f_k - f_star) / (gnorm * gnorm);
}

double step_piecewise(long k, double mu_top, double factor, long period) {
  require(k >= 0 && mu_top > 0.0 && factor > 0.0 && factor < 1.0 && period >= 1,
          "step_piecewise: bad arguments");
  return mu_top * std::pow(factor, static_cast<double>(k / period));
}

double step_backtracking(const std::function<double(const Matrix&)>& value_fn,
                         const Matrix& x, const Matrix& d, double mu_prev,
                         double eta, double rho, bool literal_rule, bool* cap_hit) {
  const double dnorm = d.norm();
  require(dnorm > 0.0, "step_backtracking: zero direction");
  require(mu_prev > 0.0 && eta > 0.0 && rho > 0.0 && rho < 1.0,
          "step_backtracking: bad arguments");
  if (cap_hit) *cap_hit = false;
  const double fx = value_fn(x);
  double mu = mu_prev;
  for (int t = 0; t < kBacktrackCap; ++t) {
    const bool decrease_holds = value_fn(x - mu * d) <= fx - eta * mu * dnorm;
    if (literal_rule ? !decrease_holds : decrease_holds) return mu;
    mu *= rho;
  }
  if (cap_hit) *cap_hit = true;
  return mu;
}

namespace {

struct ScheduleState {
  double mu_prev = 0.0;  // carried across iterations by backtracking
};

double schedule_step(const StepSchedule& schedule, ScheduleState& state, long k,
                     double f_k, double gnorm, const Matrix& x, const Matrix& d,
                     const std::function<double(const Matrix&)>& value_fn,
                     bool* cap_hit) {
  if (const auto* geo = std::get_if<Geometric>(&schedule))
    return step_geometric(k, geo->mu0, geo->rho);
  if (const auto* pol = std::get_if<Polyak>(&schedule))
    return f_k > pol->f_star ? step_polyak(f_k, pol->f_star, gnorm) : 0.0;
  if (const auto* pw = std::get_if<PiecewiseGeometric>(&schedule))
    return step_piecewise(k, pw->mu_top, pw->factor, pw->period);
  const auto& bt = std::get<Backtracking>(schedule);
  if (state.mu_prev <= 0.0) state.mu_prev = bt.mu0;
  state.mu_prev = step_backtracking(value_fn, x, d, state.mu_prev, bt.eta, bt.rho,
                                    bt.literal_rule, cap_hit);
  return state.mu_prev;
}

}  // namespace

SolverTrace subgm(const std::function<double(const Matrix&)>& value_fn,
                  const std::function<Matrix(const Matrix&)>& subgrad_fn,
                  const Matrix& x0, const StepSchedule& schedule,
                  const SolveOptions& options) {
  require(options.max_iters >= 1, "subgm: max_iters must be >= 1");
  require(options.record_stride >= 1, "subgm: record_stride must be >= 1");
  require(x0.allFinite(), "subgm: non-finite initial point");

  SolverTrace trace;
  trace.records.reserve(
      static_cast<std::size_t>(options.max_iters / options.record_stride + 2));
  Matrix x = x0;
  ScheduleState state;
  const bool is_polyak = std::holds_alternative<Polyak>(schedule);

  for (long k = 0;; ++k) {
    const double f_k = value_fn(x);
    const bool bad = !std::isfinite(f_k) || f_k > options.divergence_threshold ||
                     !x.allFinite();
    double gnorm = std::numeric_limits<double>::quiet_NaN();
    Matrix d;
    if (!bad) {
      d = subgrad_fn(x);
      gnorm = d.norm();
    }

    TraceRecord rec;
    rec.k = k;
    rec.f = f_k;
    rec.gnorm = gnorm;
    rec.step = 0.0;
    if (options.dist_fn && x.allFinite()) rec.dist = options.dist_fn(x);

    const bool final_k = k >= options.max_iters;
    if (bad || final_k || (is_polyak && gnorm == 0.0)) {
      trace.records.push_back(rec);
      trace.status = bad ? TerminalStatus::diverged
                         : (final_k ? TerminalStatus::max_iters
                                    : TerminalStatus::zero_subgradient);
      trace.iterations = k;
      break;
    }

    double mu = 0.0;
    if (gnorm == 0.0) {
      // Non-Polyak schedule at a stationary selection: the step has no effect;
      // keep iterating so the schedule keeps decaying.
      mu = 0.0;
    } else {
      bool cap_hit = false;
      mu = schedule_step(schedule, state, k, f_k, gnorm, x, d, value_fn, &cap_hit);
      trace.backtrack_cap_hit = trace.backtrack_cap_hit || cap_hit;
    }
    rec.step = mu;
    if (k % options.record_stride == 0) trace.records.push_back(rec);
    if (gnorm > 0.0) x -= mu * d;
  }
  trace.final_x = x;
  return trace;
}

SolverTrace gradient_descent(const std::function<double(const Matrix&)>& value_fn,
                             const std::function<Matrix(const Matrix&)>& grad_fn,
                             const Matrix& x0, double step,
                             const SolveOptions& options) {
  require(step > 0.0, "gradient_descent: step must be positive");
  require(options.max_iters >= 1, "gradient_descent: max_iters must be >= 1");
  require(x0.allFinite(), "gradient_descent: non-finite initial point");

  SolverTrace trace;
  Matrix x = x0;
  for (long k = 0;; ++k) {
    const double f_k = value_fn(x);
    const bool bad = !std::isfinite(f_k) || f_k > options.divergence_threshold ||
                     !x.allFinite();
    double gnorm = std::numeric_limits<double>::quiet_NaN();
    Matrix d;
    if (!bad) {
      d = grad_fn(x);
      gnorm = d.norm();
    }
    TraceRecord rec;
    rec.k = k;
    rec.f = f_k;
    rec.gnorm = gnorm;
    rec.step = bad ? 0.0 : step;
    if (options.dist_fn && x.allFinite()) rec.dist = options.dist_fn(x);

    const bool final_k = k >= options.max_iters;
    if (bad || final_k || gnorm == 0.0) {
      trace.records.push_back(rec);
      trace.status = bad ? TerminalStatus::diverged
                         : (final_k ? TerminalStatus::max_iters
                                    : TerminalStatus::zero_subgradient);
      trace.iterations = k;
      break;
    }
    if (k % options.record_stride == 0) trace.records.push_back(rec);
    x -= step * d;
  }
  trace.final_x = x;
  return trace;
}

double mu0_max(double alpha, double tau, double kappa, double dist0) {
  require(alpha > 0.0 && kappa > 0.0 && tau >= 0.0 && dist0 >= 0.0,
          "mu0_max: bad arguments");
  if (tau == 0.0) return std::numeric_limits<double>::infinity();
  const double excess = std::max(tau / alpha * dist0 - 1.0, 0.0);
  return alpha * alpha / (2.0 * tau * kappa * kappa) * (1.0 - excess * excess);
}

double dist0_bar(double alpha, double kappa, double mu0, double dist0) {
  require(alpha > 0.0 && kappa > 0.0 && mu0 >= 0.0 && dist0 >= 0.0,
          "dist0_bar: bad arguments");
  return std::max(dist0, mu0 * std::max(kappa * kappa, 2.0 * alpha * alpha) / alpha);
}

double rho_lower(double alpha, double tau, double kappa, double mu0, double dist0) {
  require(alpha > 0.0 && kappa >= alpha && tau >= 0.0 && mu0 > 0.0 && dist0 >= 0.0,
          "rho_lower: bad arguments");
  require(mu0 <= mu0_max(alpha, tau, kappa, dist0), "rho_lower: mu0 exceeds mu0_max");
  require(tau == 0.0 || dist0 < 2.0 * alpha / tau,
          "rho_lower: dist0 must be inside the 2*alpha/tau ball");
  // Reference distance max{dist0, mu0 kappa^2/alpha}: identical to dist0_bar
  // whenever kappa^2 >= 2 alpha^2, and the minimizer of the rate expression
  // otherwise, which keeps the bound inside (0,1) on its whole domain.
  const double d = std::max(dist0, mu0 * kappa * kappa / alpha);
  const double value =
      1.0 - (2.0 * alpha / d - tau) * mu0 + kappa * kappa / (d * d) * mu0 * mu0;
  return std::sqrt(std::max(value, 0.0));
}

ScheduleBounds schedule_bounds(double alpha, double tau, double kappa, double mu0,
                               double dist0) {
  ScheduleBounds b;
  b.mu0_max = mu0_max(alpha, tau, kappa, dist0);
  b.dist0_bar = dist0_bar(alpha, kappa, mu0, dist0);
  b.rho_lower = rho_lower(alpha, tau, kappa, mu0, dist0);
  b.regime = (tau == 0.0 || dist0 <= alpha / tau) ? ConvergenceRegime::case_I
                                                  : ConvergenceRegime::case_II;
  return b;
}

std::vector<RateCurvePoint> rho_curve(double alpha, double tau, double kappa,
                                      double dist0, const std::vector<double>& mu0_grid) {
  require(!mu0_grid.empty(), "rho_curve: empty grid");
  std::vector<RateCurvePoint> curve;
  curve.reserve(mu0_grid.size());
  for (double mu0 : mu0_grid) {
    RateCurvePoint pt;
    pt.mu0 = mu0;
    pt.dist0_bar = dist0_bar(alpha, kappa, mu0, dist0);
    if (mu0 <= 0.0) {
      pt.rho_lower = 1.0;  // limit value
    } else {
      const double d = std::max(dist0, mu0 * kappa * kappa / alpha);
      const double value =
          1.0 - (2.0 * alpha / d - tau) * mu0 + kappa * kappa / (d * d) * mu0 * mu0;
      pt.rho_lower = std::sqrt(std::max(value, 0.0));
    }
    curve.push_back(pt);
  }
  return curve;
}

}  // namespace lrr
