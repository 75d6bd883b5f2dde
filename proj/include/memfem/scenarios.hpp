#ifndef MEMFEM_SCENARIOS_HPP
#define MEMFEM_SCENARIOS_HPP

#include <optional>
#include <string>

#include "memfem/config_file.hpp"
#include "memfem/form_finding.hpp"
#include "memfem/newton.hpp"

namespace memfem {

// Named runs exposed by the CLI. Generated-mesh scenarios support refinement
// (convergence studies); custom scenarios read an OFF mesh.
enum class Scenario {
  formfind_catenoid,
  formfind_custom,
  solve_cylinder_load,
  solve_spheroid_pressure,
  solve_custom,
};

struct ScenarioConfig {
  Scenario scenario;

  // mesh (generator parameters or OFF path)
  std::string mesh_path;
  double radius = 0.5;
  double height = 0.6;
  int axial_divisions = 8;
  int circumferential_divisions = 16;
  double r_max = 1.0;
  double r_min = 0.5;
  int refinement = 3;
  int geometry_order = 2;
  // Super-parametric by default: order-1 displacements on order-2 geometry.
  int displacement_order = 1;

  // material
  std::string model = "mooney-rivlin";
  double E = 10e6;
  double nu = 0.5;
  double thickness = 0.01;

  // load
  double load_scale = 4000.0;  // axial profile scale for the cylinder run
  double pressure = 0.0;
  std::string load_file;

  SolverConfig solver;
  FormFindOptions formfind;

  int snapshot_every = 0;
};

// Parses and validates a config; rejects unknown keys and checks the
// required keys of the selected scenario before any compute.
ScenarioConfig load_scenario(const ConfigFile& file);

// Build the scenario's reference mesh. `extra_refinement` doubles the
// generator divisions per level (convergence studies).
SurfaceMesh build_scenario_mesh(const ScenarioConfig& cfg, int extra_refinement = 0);

struct SolveRun {
  SurfaceMesh mesh;
  Eigen::VectorXd u;
  SolveReport report;
  int dof_count = 0;
  double norm_total = 0.0;       // |u|_L2 on the reference surface
  double norm_normal = 0.0;      // normal component
  double norm_tangential = 0.0;  // tangential component
};

// One full solve of a scenario; writes solution VTK, report text, and
// residual CSV into out_dir when non-empty.
SolveRun run_solve(const ScenarioConfig& cfg, const std::string& out_dir,
                   int extra_refinement = 0);

struct ConvergenceStudy {
  std::vector<double> h;
  std::vector<int> dofs;
  std::vector<double> error;            // area error (form finding)
  std::vector<double> error_normal;     // L2-norm errors (load scenario)
  std::vector<double> error_tangential;
  double order = 0.0;
  double order_normal = 0.0;
  double order_tangential = 0.0;
};

// Uniform-refinement study. Form-finding scenarios measure the area error
// against the catenoid reference; the cylinder load scenario measures
// L2-norm errors of the normal/tangential displacement against an overkill
// run two refinements past the finest level. CSV is written when out_dir is
// non-empty; a failing level aborts with the partial table preserved.
ConvergenceStudy run_convergence_study(const ScenarioConfig& cfg, int levels,
                                       const std::string& out_dir);

struct PressureSweep {
  std::vector<double> pressure;    // [Pa]
  std::vector<double> max_radius;  // deformed xy-plane extent [m]
  std::vector<double> min_radius;  // deformed |z| extent [m]
  bool completed = false;
};

// Ramps the pressure in solver.load_steps increments, recording deformed
// radii per step; Newton failure truncates the table.
PressureSweep run_pressure_sweep(const ScenarioConfig& cfg, const std::string& out_dir);

struct FormFindRun {
  FormFindState state;
  double area = 0.0;
};

FormFindRun run_formfind(const ScenarioConfig& cfg, const std::string& out_dir,
                         int extra_refinement = 0);

}  // namespace memfem

#endif
