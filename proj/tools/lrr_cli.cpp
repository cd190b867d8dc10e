// Command-line harness for the robust low-rank recovery library: instance
// generation, single solves, initialization, and the experiment suites.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lrr/csv.hpp"
#include "lrr/experiments.hpp"
#include "lrr/io.hpp"
#include "lrr/svg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) values.push_back(std::stod(item));
  }
  return values;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  for (double v : parse_list(text)) values.push_back(static_cast<int>(v));
  return values;
}

struct GlobalOptions {
  std::uint64_t seed = 7;
  int workers = 1;
  std::string out = "out";
  std::string scale = "paper";
  std::string config_path;

  lrr::ExperimentScale experiment_scale() const {
    if (scale == "paper") return lrr::scale_preset(lrr::ScalePreset::paper);
    if (scale == "small") return lrr::scale_preset(lrr::ScalePreset::small);
    throw CLI::ValidationError("--scale must be 'paper' or 'small'");
  }

  nlohmann::json config_json() const {
    if (config_path.empty()) return nlohmann::json::object();
    return nlohmann::json::parse(lrr::io::read_text_file(config_path));
  }

  std::filesystem::path out_dir() const {
    std::filesystem::create_directories(out);
    return out;
  }
};

void write_table(const std::filesystem::path& path, const lrr::csv::Table& table) {
  lrr::csv::write(path, table);
  std::cout << "wrote " << path.string() << " (" << table.rows.size() << " rows)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"robust low-rank matrix recovery via l1 subgradient methods"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--seed", global.seed, "base seed for all randomness");
  app.add_option("--workers", global.workers, "worker thread count");
  app.add_option("--out", global.out, "output directory");
  app.add_option("--scale", global.scale, "experiment scale preset: paper|small");
  app.add_option("--config", global.config_path, "JSON config file (solve)");

  // --- gen -------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate a problem instance directory");
  int gen_n1 = 50, gen_n2 = 50, gen_r = 5;
  double gen_p = 0.3, gen_std = 10.0;
  long gen_m = 0;
  bool gen_general = false, gen_symmetric_op = false;
  gen->add_option("--n1", gen_n1, "rows of the ground-truth matrix");
  gen->add_option("--n2", gen_n2, "cols of the ground-truth matrix");
  gen->add_option("--r", gen_r, "rank");
  gen->add_option("--p", gen_p, "outlier ratio in [0,1)");
  gen->add_option("--m", gen_m, "measurement count (default 5*n1*r)");
  gen->add_option("--outlier-std", gen_std, "outlier standard deviation");
  gen->add_flag("--general", gen_general, "rectangular UV^T ground truth");
  gen->add_flag("--symmetric-op", gen_symmetric_op, "symmetric sensing matrices");

  // --- init ------------------------------------------------------------
  auto* init = app.add_subcommand("init", "write starting factors for an instance");
  std::string init_instance, init_kind = "truncated_spectral";
  double init_beta = 0.0, init_scale = 1.0;
  init->add_option("--instance", init_instance, "instance directory")->required();
  init->add_option("--kind", init_kind, "random|spectral|truncated_spectral");
  init->add_option("--beta", init_beta, "truncation multiplier (default from instance)");
  init->add_option("--init-scale", init_scale, "random init entry std");

  // --- solve -----------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "run one configured solve on an instance");
  std::string solve_instance;
  solve->add_option("--instance", solve_instance, "instance directory")->required();

  // --- experiment suites -------------------------------------------------
  auto* stepgrid = app.add_subcommand("stepgrid", "final distance over a (mu0, rho) grid");
  std::string sg_mu0_list, sg_rho_list;
  double sg_p = 0.3;
  int sg_m_per_nr = 5;
  long sg_iters = 10000;
  stepgrid->add_option("--mu0-list", sg_mu0_list, "comma-separated mu0 grid");
  stepgrid->add_option("--rho-list", sg_rho_list, "comma-separated rho grid");
  stepgrid->add_option("--p", sg_p, "outlier ratio");
  stepgrid->add_option("--m-per-nr", sg_m_per_nr, "measurements per nr");
  stepgrid->add_option("--iters", sg_iters, "iterations per run");

  auto* converge = app.add_subcommand("converge", "per-iteration distance for each schedule");
  double cv_p = 0.3;
  int cv_m_per_nr = 5;
  long cv_iters = 10000, cv_stride = 1;
  converge->add_option("--p", cv_p, "outlier ratio");
  converge->add_option("--m-per-nr", cv_m_per_nr, "measurements per nr");
  converge->add_option("--iters", cv_iters, "iterations per run");
  converge->add_option("--stride", cv_stride, "record every k-th iteration");

  auto* phase = app.add_subcommand("phase", "success-rate map over (p, m/nr)");
  int ph_trials = 0;
  long ph_iters = 2000;
  std::string ph_p_list, ph_m_list;
  bool ph_l2 = false;
  phase->add_option("--trials", ph_trials, "trials per cell (default from scale)");
  phase->add_option("--iters", ph_iters, "iterations per trial");
  phase->add_option("--p-list", ph_p_list, "comma-separated outlier ratios");
  phase->add_option("--m-ratios", ph_m_list, "comma-separated m/nr values");
  phase->add_flag("--l2-baseline", ph_l2, "also run the smooth l2 baseline");

  auto* landscape = app.add_subcommand("landscape", "rank-1 loss landscape slices");
  long ls_m = 40;
  int ls_steps = 81;
  double ls_range = 1.0;
  landscape->add_option("--m", ls_m, "measurement count");
  landscape->add_option("--steps", ls_steps, "grid steps per axis");
  landscape->add_option("--range", ls_range, "grid half-width");

  auto* ratecurve = app.add_subcommand("ratecurve", "decay-rate bound vs initial step");
  lrr::RateCurveConfig rc_cfg;
  ratecurve->add_option("--alpha", rc_cfg.alpha, "sharpness constant");
  ratecurve->add_option("--tau", rc_cfg.tau, "weak-convexity constant");
  ratecurve->add_option("--kappa", rc_cfg.kappa, "subgradient bound");
  ratecurve->add_option("--dist0", rc_cfg.dist0, "initial distance");
  ratecurve->add_option("--mu0-max", rc_cfg.mu0_max, "grid upper end");
  ratecurve->add_option("--points", rc_cfg.points, "grid size");

  auto* riprobe = app.add_subcommand("riprobe", "Monte-Carlo isometry-constant probe");
  lrr::RipProbeConfig rp_cfg;
  std::string rp_ratios;
  riprobe->add_option("--n", rp_cfg.n, "matrix dimension");
  riprobe->add_option("--r", rp_cfg.r, "rank (probes rank 2r)");
  riprobe->add_option("--samples", rp_cfg.samples, "probe samples per operator");
  riprobe->add_option("--op-seeds", rp_cfg.op_seeds, "independent operators per ratio");
  riprobe->add_option("--ratios", rp_ratios, "comma-separated m/nr values");

  // --- plot ---------------------------------------------------------------
  auto* plot = app.add_subcommand("plot", "render a CSV as a self-contained SVG");
  std::string pl_in, pl_kind = "line", pl_x = "k", pl_y_list, pl_value = "success_rate";
  std::string pl_out_file = "plot.svg", pl_title;
  bool pl_logy = false;
  double pl_vmin = 0.0, pl_vmax = 1.0;
  plot->add_option("--in", pl_in, "input CSV")->required();
  plot->add_option("--kind", pl_kind, "line|heatmap");
  plot->add_option("--x", pl_x, "x column");
  plot->add_option("--y", pl_y_list, "comma-separated y columns (line)");
  plot->add_option("--value", pl_value, "value column (heatmap)");
  plot->add_flag("--logy", pl_logy, "log-scale y axis");
  plot->add_option("--vmin", pl_vmin, "heatmap black level");
  plot->add_option("--vmax", pl_vmax, "heatmap white level");
  plot->add_option("--title", pl_title, "plot title");
  plot->add_option("--out-file", pl_out_file, "output SVG name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    const auto out_dir = global.out_dir();

    if (gen->parsed()) {
      if (gen_m <= 0) gen_m = 5L * gen_n1 * gen_r;
      const auto inst = lrr::generate_problem(gen_n1, gen_general ? gen_n2 : gen_n1,
                                              gen_r, gen_p, gen_m, gen_std, global.seed,
                                              !gen_general, gen_symmetric_op);
      lrr::save_instance(inst, out_dir);
      std::cout << "wrote instance to " << out_dir.string() << "\n";
      return kExitOk;
    }

    if (init->parsed()) {
      const auto inst = lrr::load_instance(init_instance);
      lrr::SolveSetup setup;
      setup.seed = global.seed;
      setup.init_scale = init_scale;
      if (init_beta > 0.0) setup.beta = init_beta;
      if (init_kind == "random")
        setup.init_kind = lrr::InitKind::random;
      else if (init_kind == "spectral")
        setup.init_kind = lrr::InitKind::spectral;
      else if (init_kind == "truncated_spectral")
        setup.init_kind = lrr::InitKind::truncated_spectral;
      else
        throw CLI::ValidationError("unknown init kind " + init_kind);
      const auto res = lrr::run_init(inst, setup);
      lrr::io::write_matrix(out_dir / "u0.mat", res.u0);
      if (!inst.symmetric) lrr::io::write_matrix(out_dir / "v0.mat", res.v0);
      if (res.degenerate)
        std::cerr << "warning: spectral estimate vanished; factors are zero\n";
      std::cout << "wrote starting factors to " << out_dir.string() << "\n";
      return kExitOk;
    }

    if (solve->parsed()) {
      const auto inst = lrr::load_instance(solve_instance);
      auto setup = lrr::parse_solver_config(global.config_json());
      if (global.config_path.empty()) setup.seed = global.seed;
      const auto outcome = lrr::run_solve(inst, setup);
      write_table(out_dir / "trace.csv", lrr::trace_table(outcome.trace));
      lrr::io::write_text_file(out_dir / "report.json",
                               lrr::report_json(outcome.report).dump(2) + "\n");
      if (outcome.trace.status == lrr::TerminalStatus::diverged) {
        std::cerr << "solve diverged\n";
        return kExitNumerical;
      }
      std::cout << "final relative error " << outcome.report.rel_error << "\n";
      return kExitOk;
    }

    if (stepgrid->parsed()) {
      lrr::StepGridConfig cfg;
      cfg.scale = global.experiment_scale();
      cfg.p = sg_p;
      cfg.m_per_nr = sg_m_per_nr;
      cfg.iters = sg_iters;
      cfg.seed = global.seed;
      cfg.workers = global.workers;
      if (!sg_mu0_list.empty()) cfg.mu0_grid = parse_list(sg_mu0_list);
      if (!sg_rho_list.empty()) cfg.rho_grid = parse_list(sg_rho_list);
      write_table(out_dir / "stepgrid.csv", lrr::run_stepgrid(cfg));
      return kExitOk;
    }

    if (converge->parsed()) {
      lrr::ConvergeConfig cfg;
      cfg.scale = global.experiment_scale();
      cfg.p = cv_p;
      cfg.m_per_nr = cv_m_per_nr;
      cfg.iters = cv_iters;
      cfg.record_stride = cv_stride;
      cfg.seed = global.seed;
      cfg.workers = global.workers;
      write_table(out_dir / "converge.csv", lrr::run_converge(cfg));
      return kExitOk;
    }

    if (phase->parsed()) {
      lrr::PhaseConfig cfg;
      cfg.scale = global.experiment_scale();
      if (ph_trials > 0) cfg.scale.trials = ph_trials;
      cfg.iters = ph_iters;
      cfg.seed = global.seed;
      cfg.workers = global.workers;
      cfg.l2_baseline = ph_l2;
      if (!ph_p_list.empty()) cfg.p_grid = parse_list(ph_p_list);
      if (!ph_m_list.empty()) cfg.m_ratios = parse_int_list(ph_m_list);
      write_table(out_dir / "phase.csv", lrr::run_phase(cfg));
      return kExitOk;
    }

    if (landscape->parsed()) {
      lrr::LandscapeConfig cfg;
      cfg.m = ls_m;
      cfg.seed = global.seed;
      cfg.grid.u1_min = cfg.grid.u2_min = -ls_range;
      cfg.grid.u1_max = cfg.grid.u2_max = ls_range;
      cfg.grid.u1_steps = cfg.grid.u2_steps = ls_steps;
      for (const auto& run : lrr::run_landscape(cfg)) {
        char name[64];
        std::snprintf(name, sizeof(name), "landscape_%s_p%.2f.csv",
                      run.loss == lrr::LossKind::l1 ? "l1" : "l2", run.p);
        write_table(out_dir / name, lrr::landscape_table(run.grid));
      }
      return kExitOk;
    }

    if (ratecurve->parsed()) {
      write_table(out_dir / "ratecurve.csv", lrr::run_ratecurve(rc_cfg));
      return kExitOk;
    }

    if (riprobe->parsed()) {
      rp_cfg.seed = global.seed;
      rp_cfg.workers = global.workers;
      if (!rp_ratios.empty()) rp_cfg.m_ratios = parse_int_list(rp_ratios);
      const auto rows = lrr::run_riprobe(rp_cfg);
      const auto path = out_dir / "riprobe.json";
      lrr::io::write_text_file(path, lrr::riprobe_json(rows).dump(2) + "\n");
      std::cout << "wrote " << path.string() << "\n";
      return kExitOk;
    }

    if (plot->parsed()) {
      const auto data = lrr::csv::read(pl_in);
      const auto path = out_dir / pl_out_file;
      if (pl_kind == "line") {
        lrr::svg::LinePlotSpec spec;
        spec.title = pl_title.empty() ? pl_in : pl_title;
        spec.x_column = pl_x;
        spec.log_y = pl_logy;
        if (!pl_y_list.empty()) {
          std::stringstream ss(pl_y_list);
          std::string item;
          while (std::getline(ss, item, ','))
            if (!item.empty()) spec.y_columns.push_back(item);
        }
        lrr::svg::render_line_plot(data, spec, path);
      } else if (pl_kind == "heatmap") {
        lrr::svg::HeatmapSpec spec;
        spec.title = pl_title.empty() ? pl_in : pl_title;
        spec.x_column = pl_x;
        spec.y_column = pl_y_list.empty() ? "p" : pl_y_list;
        spec.value_column = pl_value;
        spec.vmin = pl_vmin;
        spec.vmax = pl_vmax;
        lrr::svg::render_heatmap(data, spec, path);
      } else {
        throw CLI::ValidationError("--kind must be line or heatmap");
      }
      std::cout << "wrote " << path.string() << "\n";
      return kExitOk;
    }
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
