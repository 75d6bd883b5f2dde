#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "memfem/errors.hpp"
#include "memfem/scenarios.hpp"

namespace {

// Exit codes: 1 config, 2 IO, 3 solver.
constexpr int kConfigExit = 1;
constexpr int kIoExit = 2;
constexpr int kSolverExit = 3;

struct CommonOptions {
  std::string config_path;
  std::string out_dir = ".";
  int threads = 0;
  bool iso_p2 = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "configuration file (key = value)")
      ->required();
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--threads", opts.threads, "OpenMP thread count (0 = runtime default)");
  cmd->add_flag("--iso-p2", opts.iso_p2,
                "isoparametric quadratic displacements (default is linear "
                "displacements on quadratic geometry)");
}

memfem::ScenarioConfig load(const CommonOptions& opts) {
  if (opts.threads > 0) {
#ifdef _OPENMP
    omp_set_num_threads(opts.threads);
#endif
  }
  auto cfg = memfem::load_scenario(memfem::ConfigFile::parse_file(opts.config_path));
  if (opts.iso_p2) {
    cfg.geometry_order = 2;
    cfg.displacement_order = 2;
  }
  if (opts.threads == 1) cfg.solver.mode = memfem::Execution::serial;
  std::filesystem::create_directories(opts.out_dir);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite element membranes on triangulated surfaces"};
  app.require_subcommand(1);

  CommonOptions solve_opts, formfind_opts, converge_opts, sweep_opts;
  int levels = 4;

  CLI::App* solve_cmd = app.add_subcommand("solve", "one static solve");
  add_common(solve_cmd, solve_opts);
  CLI::App* formfind_cmd =
      app.add_subcommand("formfind", "minimal-surface form finding");
  add_common(formfind_cmd, formfind_opts);
  CLI::App* converge_cmd =
      app.add_subcommand("converge", "uniform-refinement convergence study");
  add_common(converge_cmd, converge_opts);
  converge_cmd->add_option("--levels", levels, "number of refinement levels");
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "pressure sweep with radii table");
  add_common(sweep_cmd, sweep_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) {
      const auto cfg = load(solve_opts);
      const auto run = memfem::run_solve(cfg, solve_opts.out_dir);
      std::cout << memfem::report_to_text(run.report);
      std::printf("|u|_L2 = %.12g m (normal %.12g, tangential %.12g)\n",
                  run.norm_total, run.norm_normal, run.norm_tangential);
    } else if (formfind_cmd->parsed()) {
      const auto cfg = load(formfind_opts);
      const auto run = memfem::run_formfind(cfg, formfind_opts.out_dir);
      std::printf("form finding converged in %d iterations, area %.12g m^2\n",
                  run.state.iterations, run.area);
    } else if (converge_cmd->parsed()) {
      const auto cfg = load(converge_opts);
      const auto study = memfem::run_convergence_study(cfg, levels, converge_opts.out_dir);
      if (cfg.scenario == memfem::Scenario::formfind_catenoid) {
        std::printf("fitted area convergence order: %.3f\n", study.order);
      } else {
        std::printf("fitted orders: normal %.3f, tangential %.3f\n",
                    study.order_normal, study.order_tangential);
      }
    } else if (sweep_cmd->parsed()) {
      const auto cfg = load(sweep_opts);
      const auto sweep = memfem::run_pressure_sweep(cfg, sweep_opts.out_dir);
      std::printf("pressure sweep complete: %zu states written\n",
                  sweep.pressure.size());
    }
  } catch (const memfem::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kConfigExit;
  } catch (const memfem::ParameterError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kConfigExit;
  } catch (const memfem::IoError& err) {
    std::cerr << "io error: " << err.what() << "\n";
    return kIoExit;
  } catch (const std::exception& err) {
    std::cerr << "solver error: " << err.what() << "\n";
    return kSolverExit;
  }
  return 0;
}
