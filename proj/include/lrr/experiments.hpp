#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lrr/csv.hpp"
#include "lrr/initialization.hpp"
#include "lrr/io.hpp"
#include "lrr/metrics.hpp"
#include "lrr/objectives.hpp"
#include "lrr/operators.hpp"
#include "lrr/solver.hpp"

namespace lrr {

/// Runs fn(0..count-1) across a small thread pool. Each item must be pure
/// given its index; results are slot-addressed so scheduling order is
/// irrelevant. The first exception thrown by an item is rethrown.
void parallel_for(long count, int workers, const std::function<void(long)>& fn);

/// Seed for trial `trial` of grid cell (i, j), independent of execution order.
std::uint64_t trial_seed(std::uint64_t base_seed, long cell_i, long cell_j, long trial);

enum class ScalePreset { paper, small };

struct ExperimentScale {
  int n = 50;
  int r = 5;
  int trials = 10;
};

ExperimentScale scale_preset(ScalePreset preset);

/// Exact value of the PSD objective on the solution orbit: ||s*||_1 / m.
double polyak_fstar(const ProblemInstance& inst);

// --- step-size grid ----------------------------------------------------------

struct StepGridConfig {
  ExperimentScale scale;
  double p = 0.3;
  int m_per_nr = 5;
  double outlier_std = 10.0;
  std::vector<double> mu0_grid = {0.1, 0.5, 1.0, 10.0};
  std::vector<double> rho_grid;  // default 0.80, 0.81, ..., 0.99
  long iters = 10000;
  std::uint64_t seed = 7;
  int workers = 1;
};

/// Final orbit distance after `iters` iterations for every (mu0, rho) pair on
/// one fixed instance; diverged runs record the sentinel value 1e4.
/// CSV columns: mu0, rho, final_dist.
csv::Table run_stepgrid(const StepGridConfig& cfg);

inline constexpr double kDivergedSentinel = 1e4;

// --- per-schedule convergence traces ----------------------------------------

struct ConvergeConfig {
  ExperimentScale scale;
  double p = 0.3;
  int m_per_nr = 5;
  double outlier_std = 10.0;
  double mu0 = 1.0;
  std::vector<double> geometric_rhos = {0.90, 0.93, 0.96, 0.99};
  std::vector<long> piecewise_periods = {50, 100, 200};
  double piecewise_factor = 0.5;
  double backtracking_eta = 1e-3;
  double backtracking_rho = 0.85;
  long iters = 10000;
  std::uint64_t seed = 7;
  int workers = 1;
  long record_stride = 1;
};

/// Orbit distance per iteration for geometric, Polyak, piecewise, and
/// backtracking schedules on one fixed instance. CSV: k plus one column per run.
csv::Table run_converge(const ConvergeConfig& cfg);

// --- phase transition ---------------------------------------------------------

struct PhaseConfig {
  ExperimentScale scale;
  std::vector<double> p_grid;     // default 0, 0.05, ..., 0.5
  std::vector<int> m_ratios = {2, 3, 4, 5, 6, 7};
  double outlier_std = 10.0;
  double mu0 = 1.0;
  double rho = 0.99;
  long iters = 2000;
  double threshold = 1e-6;
  std::uint64_t seed = 7;
  int workers = 1;
  bool l2_baseline = false;  // optional smooth-loss contrast column
  double l2_step = 2e-4;
};

/// Success rate over seeded trials per (p, m/nr) cell.
/// CSV columns: p, m_over_nr, success_rate, trials (plus l2_success_rate when
/// the baseline is enabled).
csv::Table run_phase(const PhaseConfig& cfg);

// --- landscape slices -----------------------------------------------------------

struct LandscapeConfig {
  std::vector<double> ps = {0.0, 0.05, 0.10};
  long m = 40;
  double outlier_std = 10.0;
  GridSpec grid;
  std::uint64_t seed = 7;
};

struct LandscapeRun {
  double p = 0.0;
  LossKind loss = LossKind::l1;
  LandscapeGrid grid;
};

/// Rank-1 slices of -log(loss) for both losses at each outlier ratio, on the
/// fixed ground truth [0.5, 0.5]^T.
std::vector<LandscapeRun> run_landscape(const LandscapeConfig& cfg);

csv::Table landscape_table(const LandscapeGrid& grid);

// --- schedule-parameter curve ---------------------------------------------------

struct RateCurveConfig {
  double alpha = 1.0;
  double tau = 1.0;
  double kappa = 1.0;
  double dist0 = 0.3;
  double mu0_min = 0.0;
  double mu0_max = 0.5;
  int points = 501;
};

/// CSV columns: mu0, rho_lower, dist0_bar.
csv::Table run_ratecurve(const RateCurveConfig& cfg);

// --- isometry probe ---------------------------------------------------------------

struct RipProbeConfig {
  int n = 30;
  int r = 2;
  std::vector<int> m_ratios = {2, 4, 6, 8, 10};  // m = ratio * n * r
  long samples = 200;
  int op_seeds = 5;
  std::uint64_t seed = 7;
  int workers = 1;
};

struct RipProbeRow {
  int m_over_nr = 0;
  long m = 0;
  std::vector<RipEstimate> per_seed;
  double median_delta = 0.0;
  double mean_t = 0.0;  // grand mean of normalized measurement norms
};

std::vector<RipProbeRow> run_riprobe(const RipProbeConfig& cfg);
nlohmann::json riprobe_json(const std::vector<RipProbeRow>& rows);

// --- single solves ------------------------------------------------------------------

enum class InitKind { random, spectral, truncated_spectral, file };

struct SolveSetup {
  StepSchedule schedule = Geometric{1.0, 0.99};
  long max_iters = 2000;
  std::uint64_t seed = 7;
  InitKind init_kind = InitKind::random;
  double init_scale = 1.0;
  std::optional<double> beta;    // truncated_spectral; defaults from the instance
  std::filesystem::path u0_path; // init_kind == file
  std::filesystem::path v0_path;
  std::optional<double> lambda;  // general case; defaults to the recommended value
  std::optional<double> f_star;  // Polyak; defaults to ||s*||_1/m
  double threshold = 1e-6;
  long record_stride = 1;
};

/// Parses the solver config JSON
/// {schedule: {kind, ...}, max_iters, seed, init: {kind, ...}, ...}.
SolveSetup parse_solver_config(const nlohmann::json& config);

struct SolveOutcome {
  SolverTrace trace;
  RecoveryReport report;
  Matrix xhat;
  double lambda_used = 0.0;  // general case
};

/// Builds the starting point per setup, runs the subgradient method on the
/// instance's objective (f for PSD, regularized g otherwise), and reports
/// recovery quality against the ground truth.
SolveOutcome run_solve(const ProblemInstance& inst, const SolveSetup& setup);

/// Starting factors for an instance per the configured init kind.
InitResult run_init(const ProblemInstance& inst, const SolveSetup& setup);

/// Trace CSV with columns k, f, step, gnorm, dist.
csv::Table trace_table(const SolverTrace& trace);

nlohmann::json report_json(const RecoveryReport& report);
nlohmann::json regularity_json(const RegularityParams& reg);

}  // namespace lrr
