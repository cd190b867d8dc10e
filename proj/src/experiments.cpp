#include "lrr/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "lrr/rng.hpp"

namespace lrr {

void parallel_for(long count, int workers, const std::function<void(long)>& fn) {
  if (count <= 0) return;
  workers = static_cast<int>(std::clamp<long>(workers, 1, count));
  if (workers == 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (long i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::uint64_t trial_seed(std::uint64_t base_seed, long cell_i, long cell_j, long trial) {
  std::uint64_t h = rng::substream_seed(base_seed, rng::kTagTrial, static_cast<std::uint64_t>(cell_i));
  h = rng::substream_seed(h, rng::kTagTrial, static_cast<std::uint64_t>(cell_j));
  return rng::substream_seed(h, rng::kTagTrial, static_cast<std::uint64_t>(trial));
}

ExperimentScale scale_preset(ScalePreset preset) {
  return preset == ScalePreset::paper ? ExperimentScale{50, 5, 10}
                                      : ExperimentScale{20, 2, 5};
}

double polyak_fstar(const ProblemInstance& inst) {
  return inst.sstar.lpNorm<1>() / static_cast<double>(inst.op.m());
}

namespace {

std::vector<double> default_rho_grid() {
  std::vector<double> rhos;
  for (int i = 80; i <= 99; ++i) rhos.push_back(static_cast<double>(i) / 100.0);
  return rhos;
}

std::vector<double> default_p_grid() {
  std::vector<double> ps;
  for (int i = 0; i <= 10; ++i) ps.push_back(static_cast<double>(i) * 0.05);
  return ps;
}

ProblemInstance standard_instance(const ExperimentScale& scale, double p, int m_per_nr,
                                  double outlier_std, std::uint64_t seed) {
  const long m = static_cast<long>(m_per_nr) * scale.n * scale.r;
  return generate_problem(scale.n, scale.n, scale.r, p, m, outlier_std, seed,
                          /*symmetric=*/true);
}

SolverTrace solve_psd_geometric(const ProblemInstance& inst, const Matrix& u0,
                                double mu0, double rho, long iters,
                                const SolveOptions& base_options) {
  SolveOptions options = base_options;
  options.max_iters = iters;
  return subgm([&](const Matrix& u) { return f_value(inst, u); },
               [&](const Matrix& u) { return f_subgrad(inst, u); }, u0,
               Geometric{mu0, rho}, options);
}

}  // namespace

csv::Table run_stepgrid(const StepGridConfig& cfg) {
  std::vector<double> rhos = cfg.rho_grid.empty() ? default_rho_grid() : cfg.rho_grid;
  if (cfg.mu0_grid.empty() || rhos.empty())
    throw std::invalid_argument("stepgrid: empty grid");

  const ProblemInstance inst =
      standard_instance(cfg.scale, cfg.p, cfg.m_per_nr, cfg.outlier_std, cfg.seed);
  const Matrix u0 = random_init(cfg.scale.n, cfg.scale.r, 1.0,
                                rng::substream_seed(cfg.seed, rng::kTagInit, 1));

  const long cells = static_cast<long>(cfg.mu0_grid.size() * rhos.size());
  std::vector<double> final_dist(static_cast<std::size_t>(cells), 0.0);
  parallel_for(cells, cfg.workers, [&](long idx) {
    const std::size_t i = static_cast<std::size_t>(idx) / rhos.size();
    const std::size_t j = static_cast<std::size_t>(idx) % rhos.size();
    SolverTrace trace = solve_psd_geometric(inst, u0, cfg.mu0_grid[i], rhos[j],
                                            cfg.iters, SolveOptions{});
    final_dist[static_cast<std::size_t>(idx)] =
        trace.status == TerminalStatus::diverged
            ? kDivergedSentinel
            : dist_to_orbit(trace.final_x, inst.ustar);
  });

  csv::Table table;
  table.header = {"mu0", "rho", "final_dist"};
  for (std::size_t i = 0; i < cfg.mu0_grid.size(); ++i)
    for (std::size_t j = 0; j < rhos.size(); ++j)
      table.rows.push_back({cfg.mu0_grid[i], rhos[j],
                            final_dist[i * rhos.size() + j]});
  return table;
}

csv::Table run_converge(const ConvergeConfig& cfg) {
  const ProblemInstance inst =
      standard_instance(cfg.scale, cfg.p, cfg.m_per_nr, cfg.outlier_std, cfg.seed);
  const Matrix u0 = random_init(cfg.scale.n, cfg.scale.r, 1.0,
                                rng::substream_seed(cfg.seed, rng::kTagInit, 1));

  struct Run {
    std::string name;
    StepSchedule schedule;
  };
  std::vector<Run> runs;
  char buf[64];
  for (double rho : cfg.geometric_rhos) {
    std::snprintf(buf, sizeof(buf), "geo_%.2f", rho);
    runs.push_back({buf, Geometric{cfg.mu0, rho}});
  }
  runs.push_back({"polyak", Polyak{polyak_fstar(inst)}});
  for (long period : cfg.piecewise_periods) {
    std::snprintf(buf, sizeof(buf), "piecewise_%ld", period);
    runs.push_back({buf, PiecewiseGeometric{cfg.mu0, cfg.piecewise_factor, period}});
  }
  runs.push_back(
      {"backtracking", Backtracking{cfg.backtracking_eta, cfg.backtracking_rho, cfg.mu0}});

  std::vector<SolverTrace> traces(runs.size());
  parallel_for(static_cast<long>(runs.size()), cfg.workers, [&](long i) {
    SolveOptions options;
    options.max_iters = cfg.iters;
    options.record_stride = cfg.record_stride;
    options.dist_fn = [&](const Matrix& u) { return dist_to_orbit(u, inst.ustar); };
    traces[static_cast<std::size_t>(i)] =
        subgm([&](const Matrix& u) { return f_value(inst, u); },
              [&](const Matrix& u) { return f_subgrad(inst, u); }, u0,
              runs[static_cast<std::size_t>(i)].schedule, options);
  });

  csv::Table table;
  table.header = {"k"};
  for (const auto& run : runs) table.header.push_back(run.name);
  std::size_t longest = 0;
  for (const auto& trace : traces) longest = std::max(longest, trace.records.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t row = 0; row < longest; ++row) {
    std::vector<double> values;
    values.reserve(runs.size() + 1);
    double k = nan;
    for (const auto& trace : traces)
      if (row < trace.records.size()) k = static_cast<double>(trace.records[row].k);
    values.push_back(k);
    for (const auto& trace : traces)
      values.push_back(row < trace.records.size() ? trace.records[row].dist : nan);
    table.rows.push_back(std::move(values));
  }
  return table;
}

csv::Table run_phase(const PhaseConfig& cfg) {
  const std::vector<double> ps = cfg.p_grid.empty() ? default_p_grid() : cfg.p_grid;
  if (ps.empty() || cfg.m_ratios.empty() || cfg.scale.trials < 1)
    throw std::invalid_argument("phase: empty grid or no trials");

  const long cells = static_cast<long>(ps.size() * cfg.m_ratios.size());
  const long total = cells * cfg.scale.trials;
  std::vector<std::uint8_t> success(static_cast<std::size_t>(total), 0);
  std::vector<std::uint8_t> l2_success(cfg.l2_baseline ? static_cast<std::size_t>(total) : 0, 0);

  parallel_for(total, cfg.workers, [&](long idx) {
    const long cell = idx / cfg.scale.trials;
    const long trial = idx % cfg.scale.trials;
    const long pi = cell / static_cast<long>(cfg.m_ratios.size());
    const long mi = cell % static_cast<long>(cfg.m_ratios.size());
    const double p = ps[static_cast<std::size_t>(pi)];
    const long m = static_cast<long>(cfg.m_ratios[static_cast<std::size_t>(mi)]) *
                   cfg.scale.n * cfg.scale.r;
    const std::uint64_t seed = trial_seed(cfg.seed, pi, mi, trial);

    const ProblemInstance inst = generate_problem(cfg.scale.n, cfg.scale.n, cfg.scale.r,
                                                  p, m, cfg.outlier_std, seed,
                                                  /*symmetric=*/true);
    const Matrix u0 = random_init(cfg.scale.n, cfg.scale.r, 1.0, seed);

    SolveOptions options;
    options.max_iters = cfg.iters;
    options.record_stride = cfg.iters;  // endpoints only; the cell needs just X_hat
    SolverTrace trace = subgm([&](const Matrix& u) { return f_value(inst, u); },
                              [&](const Matrix& u) { return f_subgrad(inst, u); }, u0,
                              Geometric{cfg.mu0, cfg.rho}, options);
    if (trace.status != TerminalStatus::diverged) {
      const Matrix xhat = trace.final_x * trace.final_x.transpose();
      success[static_cast<std::size_t>(idx)] =
          recovery_report(xhat, inst.xstar, cfg.threshold).success ? 1 : 0;
    }

    if (cfg.l2_baseline) {
      SolverTrace l2 = gradient_descent([&](const Matrix& u) { return xi_value(inst, u); },
                                        [&](const Matrix& u) { return xi_grad(inst, u); },
                                        u0, cfg.l2_step, options);
      if (l2.status != TerminalStatus::diverged) {
        const Matrix xhat = l2.final_x * l2.final_x.transpose();
        l2_success[static_cast<std::size_t>(idx)] =
            recovery_report(xhat, inst.xstar, cfg.threshold).success ? 1 : 0;
      }
    }
  });

  csv::Table table;
  table.header = {"p", "m_over_nr", "success_rate", "trials"};
  if (cfg.l2_baseline) table.header.push_back("l2_success_rate");
  for (std::size_t pi = 0; pi < ps.size(); ++pi) {
    for (std::size_t mi = 0; mi < cfg.m_ratios.size(); ++mi) {
      const long cell = static_cast<long>(pi * cfg.m_ratios.size() + mi);
      long wins = 0, l2_wins = 0;
      for (int t = 0; t < cfg.scale.trials; ++t) {
        wins += success[static_cast<std::size_t>(cell * cfg.scale.trials + t)];
        if (cfg.l2_baseline)
          l2_wins += l2_success[static_cast<std::size_t>(cell * cfg.scale.trials + t)];
      }
      std::vector<double> row = {ps[pi], static_cast<double>(cfg.m_ratios[mi]),
                                 static_cast<double>(wins) / cfg.scale.trials,
                                 static_cast<double>(cfg.scale.trials)};
      if (cfg.l2_baseline)
        row.push_back(static_cast<double>(l2_wins) / cfg.scale.trials);
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

std::vector<LandscapeRun> run_landscape(const LandscapeConfig& cfg) {
  Matrix ustar(2, 1);
  ustar << 0.5, 0.5;

  std::vector<LandscapeRun> out;
  for (double p : cfg.ps) {
    const std::uint64_t seed = rng::substream_seed(
        cfg.seed, rng::kTagTrial, static_cast<std::uint64_t>(std::llround(p * 1000)));
    SensingOperator op = SensingOperator::gaussian(
        2, 2, cfg.m, rng::substream_seed(cfg.seed, rng::kTagOperatorSeed, 0));
    ProblemInstance inst =
        make_problem_with_truth(std::move(op), ustar, std::nullopt, p, cfg.outlier_std, seed);
    for (LossKind loss : {LossKind::l1, LossKind::l2})
      out.push_back({p, loss, landscape_slice(inst, cfg.grid, loss)});
  }
  return out;
}

csv::Table landscape_table(const LandscapeGrid& grid) {
  csv::Table table;
  table.header = {"u1", "u2", "neglogloss"};
  for (std::size_t i = 0; i < grid.u1.size(); ++i)
    for (std::size_t j = 0; j < grid.u2.size(); ++j)
      table.rows.push_back({grid.u1[i], grid.u2[j],
                            grid.value(static_cast<long>(i), static_cast<long>(j))});
  return table;
}

csv::Table run_ratecurve(const RateCurveConfig& cfg) {
  if (cfg.points < 1) throw std::invalid_argument("ratecurve: need at least one point");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(cfg.points));
  for (int i = 0; i < cfg.points; ++i) {
    grid.push_back(cfg.points == 1 ? cfg.mu0_min
                                   : cfg.mu0_min + (cfg.mu0_max - cfg.mu0_min) *
                                                       static_cast<double>(i) /
                                                       (cfg.points - 1));
  }
  const auto curve = rho_curve(cfg.alpha, cfg.tau, cfg.kappa, cfg.dist0, grid);
  csv::Table table;
  table.header = {"mu0", "rho_lower", "dist0_bar"};
  for (const auto& pt : curve)
    table.rows.push_back({pt.mu0, pt.rho_lower, pt.dist0_bar});
  return table;
}

std::vector<RipProbeRow> run_riprobe(const RipProbeConfig& cfg) {
  if (cfg.m_ratios.empty() || cfg.op_seeds < 1)
    throw std::invalid_argument("riprobe: empty configuration");

  std::vector<RipProbeRow> rows(cfg.m_ratios.size());
  const long total = static_cast<long>(cfg.m_ratios.size()) * cfg.op_seeds;
  std::vector<RipEstimate> estimates(static_cast<std::size_t>(total));
  parallel_for(total, cfg.workers, [&](long idx) {
    const long ri = idx / cfg.op_seeds;
    const long si = idx % cfg.op_seeds;
    const long m = static_cast<long>(cfg.m_ratios[static_cast<std::size_t>(ri)]) *
                   cfg.n * cfg.r;
    const std::uint64_t op_seed = trial_seed(cfg.seed, ri, si, 0);
    SensingOperator op = SensingOperator::gaussian(cfg.n, cfg.n, m, op_seed);
    estimates[static_cast<std::size_t>(idx)] =
        estimate_rip_delta(op, cfg.r, cfg.samples, trial_seed(cfg.seed, ri, si, 1));
  });

  for (std::size_t ri = 0; ri < cfg.m_ratios.size(); ++ri) {
    RipProbeRow& row = rows[ri];
    row.m_over_nr = cfg.m_ratios[ri];
    row.m = static_cast<long>(cfg.m_ratios[ri]) * cfg.n * cfg.r;
    std::vector<double> deltas;
    double mean_sum = 0.0;
    for (int si = 0; si < cfg.op_seeds; ++si) {
      const RipEstimate& est =
          estimates[ri * static_cast<std::size_t>(cfg.op_seeds) + static_cast<std::size_t>(si)];
      row.per_seed.push_back(est);
      deltas.push_back(est.delta_hat);
      mean_sum += est.mean;
    }
    std::sort(deltas.begin(), deltas.end());
    const std::size_t half = deltas.size() / 2;
    row.median_delta = deltas.size() % 2 == 1
                           ? deltas[half]
                           : 0.5 * (deltas[half - 1] + deltas[half]);
    row.mean_t = mean_sum / cfg.op_seeds;
  }
  return rows;
}

nlohmann::json riprobe_json(const std::vector<RipProbeRow>& rows) {
  nlohmann::json series = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json seeds = nlohmann::json::array();
    for (const auto& est : row.per_seed) {
      seeds.push_back({{"delta_hat", est.delta_hat},
                       {"lo", est.lo},
                       {"hi", est.hi},
                       {"mean", est.mean},
                       {"samples", est.samples},
                       {"rank_tested", est.rank_tested}});
    }
    series.push_back({{"m_over_nr", row.m_over_nr},
                      {"m", row.m},
                      {"median_delta_hat", row.median_delta},
                      {"mean_t", row.mean_t},
                      {"per_seed", seeds}});
  }
  return nlohmann::json{{"series", series}};
}

SolveSetup parse_solver_config(const nlohmann::json& config) {
  SolveSetup setup;
  if (config.contains("schedule")) {
    const auto& s = config.at("schedule");
    const std::string kind = s.at("kind").get<std::string>();
    if (kind == "geometric") {
      setup.schedule = Geometric{s.value("mu0", 1.0), s.value("rho", 0.99)};
    } else if (kind == "polyak") {
      setup.schedule = Polyak{s.value("f_star", 0.0)};
      if (s.contains("f_star")) setup.f_star = s.at("f_star").get<double>();
    } else if (kind == "piecewise") {
      setup.schedule = PiecewiseGeometric{s.value("mu_top", 1.0), s.value("factor", 0.5),
                                          s.value("period", 50L)};
    } else if (kind == "backtracking") {
      setup.schedule = Backtracking{s.value("eta", 1e-3), s.value("rho", 0.85),
                                    s.value("mu0", 1.0), s.value("literal_rule", false)};
    } else {
      throw std::invalid_argument("solver config: unknown schedule kind " + kind);
    }
  }
  setup.max_iters = config.value("max_iters", 2000L);
  setup.seed = config.value("seed", 7UL);
  setup.record_stride = config.value("record_stride", 1L);
  setup.threshold = config.value("threshold", 1e-6);
  if (config.contains("lambda")) setup.lambda = config.at("lambda").get<double>();
  if (config.contains("init")) {
    const auto& init = config.at("init");
    const std::string kind = init.value("kind", "random");
    if (kind == "random") {
      setup.init_kind = InitKind::random;
      setup.init_scale = init.value("scale", 1.0);
      if (init.contains("seed")) setup.seed = init.at("seed").get<std::uint64_t>();
    } else if (kind == "spectral") {
      setup.init_kind = InitKind::spectral;
    } else if (kind == "truncated_spectral") {
      setup.init_kind = InitKind::truncated_spectral;
      if (init.contains("beta")) setup.beta = init.at("beta").get<double>();
    } else if (kind == "file") {
      setup.init_kind = InitKind::file;
      setup.u0_path = init.at("u0").get<std::string>();
      if (init.contains("v0")) setup.v0_path = init.at("v0").get<std::string>();
    } else {
      throw std::invalid_argument("solver config: unknown init kind " + kind);
    }
  }
  return setup;
}

InitResult run_init(const ProblemInstance& inst, const SolveSetup& setup) {
  switch (setup.init_kind) {
    case InitKind::random: {
      InitResult res;
      res.u0 = random_init(inst.op.n1(), inst.rank(), setup.init_scale, setup.seed);
      if (!inst.symmetric)
        res.v0 = random_init(inst.op.n2(), inst.rank(), setup.init_scale,
                             rng::substream_seed(setup.seed, rng::kTagInit, 2));
      return res;
    }
    case InitKind::spectral:
      return spectral_init(inst.op, inst.y, inst.rank());
    case InitKind::truncated_spectral: {
      double beta = setup.beta.value_or(0.0);
      if (beta <= 0.0) {
        const double c = inst.has_ground_truth() ? cbar(inst.xstar, inst.rank()) : 1.0;
        beta = beta_default(inst.rank(), c);
      }
      return truncated_spectral_init(inst.op, inst.y, inst.rank(), beta);
    }
    case InitKind::file: {
      InitResult res;
      res.u0 = lrr::io::read_matrix(setup.u0_path);
      if (!setup.v0_path.empty()) res.v0 = lrr::io::read_matrix(setup.v0_path);
      return res;
    }
  }
  throw std::logic_error("run_init: unreachable");
}

SolveOutcome run_solve(const ProblemInstance& inst, const SolveSetup& setup) {
  InitResult init = run_init(inst, setup);

  SolveOptions options;
  options.max_iters = setup.max_iters;
  options.record_stride = setup.record_stride;

  StepSchedule schedule = setup.schedule;
  if (auto* pol = std::get_if<Polyak>(&schedule); pol && !setup.f_star.has_value()) {
    if (!inst.has_ground_truth())
      throw std::invalid_argument("run_solve: Polyak needs f_star without ground truth");
    pol->f_star = polyak_fstar(inst);
  }

  SolveOutcome outcome;
  if (inst.symmetric) {
    if (inst.has_ground_truth())
      options.dist_fn = [&](const Matrix& u) { return dist_to_orbit(u, inst.ustar); };
    outcome.trace = subgm([&](const Matrix& u) { return f_value(inst, u); },
                          [&](const Matrix& u) { return f_subgrad(inst, u); }, init.u0,
                          schedule, options);
    outcome.xhat = outcome.trace.final_x * outcome.trace.final_x.transpose();
    outcome.report = inst.has_ground_truth()
                         ? recovery_report(outcome.xhat, inst.xstar, outcome.trace.final_x,
                                           inst.ustar, setup.threshold)
                         : RecoveryReport{};
    return outcome;
  }

  const double delta_guess = 0.0;  // recommended weight at the idealized isometry
  const double lambda =
      setup.lambda.value_or(lambda_recommended(std::min(inst.p, 0.45), delta_guess));
  outcome.lambda_used = lambda;
  Matrix w0 = FactorPair{init.u0, init.v0}.stacked();
  Matrix wstar;
  if (inst.has_ground_truth() && inst.vstar.size() > 0) {
    wstar = FactorPair{inst.ustar, inst.vstar}.stacked();
    options.dist_fn = [&, wstar](const Matrix& w) { return dist_to_orbit_stacked(w, wstar); };
  }
  outcome.trace = subgm([&](const Matrix& w) { return g_value(inst, w, lambda); },
                        [&](const Matrix& w) { return g_subgrad(inst, w, lambda); }, w0,
                        schedule, options);
  const FactorPair wf =
      FactorPair::from_stacked(outcome.trace.final_x, inst.op.n1(), inst.op.n2());
  outcome.xhat = wf.U * wf.V.transpose();
  if (inst.has_ground_truth())
    outcome.report = recovery_report(outcome.xhat, inst.xstar, setup.threshold);
  return outcome;
}

csv::Table trace_table(const SolverTrace& trace) {
  csv::Table table;
  table.header = {"k", "f", "step", "gnorm", "dist"};
  for (const auto& rec : trace.records)
    table.rows.push_back({static_cast<double>(rec.k), rec.f, rec.step, rec.gnorm, rec.dist});
  return table;
}

nlohmann::json report_json(const RecoveryReport& report) {
  nlohmann::json j{{"rel_error", report.rel_error},
                   {"success", report.success},
                   {"threshold", report.threshold}};
  if (std::isnan(report.dist_orbit))
    j["dist_orbit"] = nullptr;
  else
    j["dist_orbit"] = report.dist_orbit;
  return j;
}

nlohmann::json regularity_json(const RegularityParams& reg) {
  return nlohmann::json{
      {"alpha", reg.alpha},
      {"tau", reg.tau},
      {"kappa", reg.kappa},
      {"lambda", reg.general ? nlohmann::json(reg.lambda) : nlohmann::json(nullptr)},
      {"delta", reg.delta},
      {"p", reg.p},
      {"sigma_r", reg.sigma_r},
      {"mode", !reg.general ? "psd"
                            : (reg.mode == SigmaExponent::proof_sqrt ? "proof_sqrt"
                                                                     : "as_stated")}};
}

}  // namespace lrr
