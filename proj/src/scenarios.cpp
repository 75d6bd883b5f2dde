#include "memfem/scenarios.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "memfem/errors.hpp"
#include "memfem/mesh_io.hpp"
#include "memfem/oracles.hpp"

namespace memfem {

namespace {

std::string csv_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Scenario scenario_from_name(const std::string& name) {
  if (name == "formfind-catenoid") return Scenario::formfind_catenoid;
  if (name == "formfind-custom") return Scenario::formfind_custom;
  if (name == "solve-cylinder-load") return Scenario::solve_cylinder_load;
  if (name == "solve-spheroid-pressure") return Scenario::solve_spheroid_pressure;
  if (name == "solve-custom") return Scenario::solve_custom;
  throw ConfigError("unknown scenario '" + name + "'");
}

using KeySet = std::set<std::pair<std::string, std::string>>;

KeySet allowed_keys(Scenario s) {
  KeySet keys = {{"scenario", "name"},
                 {"mesh", "geometry_order"},
                 {"mesh", "displacement_order"},
                 {"material", "model"},
                 {"material", "E"},
                 {"material", "nu"},
                 {"material", "thickness"},
                 {"solver", "rel_tol"},
                 {"solver", "max_newton"},
                 {"solver", "load_steps"},
                 {"solver", "ps_tol"},
                 {"solver", "line_search"}};
  switch (s) {
    case Scenario::formfind_catenoid:
      keys.insert({{"mesh", "radius"},
                   {"mesh", "height"},
                   {"mesh", "axial_divisions"},
                   {"mesh", "circumferential_divisions"},
                   {"formfind", "movement_tol"},
                   {"formfind", "max_outer"},
                   {"formfind", "snapshot_every"}});
      break;
    case Scenario::formfind_custom:
      keys.insert({{"mesh", "path"},
                   {"formfind", "movement_tol"},
                   {"formfind", "max_outer"},
                   {"formfind", "snapshot_every"}});
      break;
    case Scenario::solve_cylinder_load:
      keys.insert({{"mesh", "radius"},
                   {"mesh", "height"},
                   {"mesh", "axial_divisions"},
                   {"mesh", "circumferential_divisions"},
                   {"load", "scale"}});
      break;
    case Scenario::solve_spheroid_pressure:
      keys.insert({{"mesh", "r_max"},
                   {"mesh", "r_min"},
                   {"mesh", "refinement"},
                   {"load", "pressure"},
                   {"output", "snapshot_every"}});
      break;
    case Scenario::solve_custom:
      keys.insert({{"mesh", "path"}, {"load", "file"}, {"load", "pressure"}});
      break;
  }
  return keys;
}

Eigen::Matrix3d axis_z_to_x() {
  Eigen::Matrix3d r;
  r << 0, 0, 1, 0, 1, 0, -1, 0, 0;
  return r;
}

struct Discretization {
  ReferenceElement geom_ref;
  ReferenceElement disp_ref;
  DofMap dofs;
  FrameCache frames;

  Discretization(const SurfaceMesh& mesh, int disp_order)
      : geom_ref(mesh.geometry_order),
        disp_ref(disp_order),
        dofs(mesh, disp_order),
        frames(build_frame_cache(mesh, geom_ref, disp_ref)) {}
};

// L2 norms of the displacement field and its normal/tangential parts over the
// reference surface.
void l2_norms(const SurfaceMesh& mesh, const Discretization& d, const Eigen::VectorXd& u,
              double* total, double* normal, double* tangential) {
  double s_tot = 0.0, s_n = 0.0, s_t = 0.0;
  const int local = d.dofs.nodes_per_element();
  for (int e = 0; e < mesh.element_count(); ++e) {
    std::array<Eigen::Vector3d, 6> ue;
    gather_element_u(mesh, d.dofs, e, u, std::span<Eigen::Vector3d>(ue.data(), 6));
    for (const ElementFrame& frame : d.frames.element(e)) {
      Eigen::Vector3d uq = Eigen::Vector3d::Zero();
      for (int j = 0; j < local; ++j)
        uq += frame.shape[static_cast<std::size_t>(j)] * ue[static_cast<std::size_t>(j)];
      const double un = uq.dot(frame.normal);
      const Eigen::Vector3d ut = uq - un * frame.normal;
      s_tot += frame.area_weight * uq.squaredNorm();
      s_n += frame.area_weight * un * un;
      s_t += frame.area_weight * ut.squaredNorm();
    }
  }
  if (total) *total = std::sqrt(s_tot);
  if (normal) *normal = std::sqrt(s_n);
  if (tangential) *tangential = std::sqrt(s_t);
}

// Displacement at every mesh node; midside nodes of super-parametric runs
// interpolate their edge endpoints (visualization only).
std::vector<Eigen::Vector3d> nodal_displacement(const SurfaceMesh& mesh,
                                                const DofMap& dofs,
                                                const Eigen::VectorXd& u) {
  std::vector<Eigen::Vector3d> out(mesh.nodes.size(), Eigen::Vector3d::Zero());
  for (int dn = 0; dn < dofs.dof_node_count(); ++dn)
    out[static_cast<std::size_t>(dofs.mesh_node(dn))] =
        u.segment<3>(3 * dn);
  if (dofs.displacement_order() == 1 && mesh.geometry_order == 2) {
    for (const auto& elem : mesh.elements)
      for (int k = 0; k < 3; ++k)
        out[static_cast<std::size_t>(elem[3 + k])] =
            0.5 * (out[static_cast<std::size_t>(elem[(k + 1) % 3])] +
                   out[static_cast<std::size_t>(elem[(k + 2) % 3])]);
  }
  return out;
}

// Area-weighted nodal average of the converged plane-stress director,
// recovered from the solved displacement (thickness-change output).
std::vector<Eigen::Vector3d> nodal_director(const SurfaceMesh& mesh,
                                            const Discretization& d,
                                            const Material& material,
                                            const Eigen::VectorXd& u) {
  std::vector<Eigen::Vector3d> sum(mesh.nodes.size(), Eigen::Vector3d::Zero());
  std::vector<double> weight(mesh.nodes.size(), 0.0);
  const PlaneStressOptions ps_opts = default_plane_stress_options(material);
  const int local = d.dofs.nodes_per_element();
  for (int e = 0; e < mesh.element_count(); ++e) {
    std::array<Eigen::Vector3d, 6> ue;
    gather_element_u(mesh, d.dofs, e, u, std::span<Eigen::Vector3d>(ue.data(), 6));
    const auto& elem = mesh.elements[static_cast<std::size_t>(e)];
    for (const ElementFrame& frame : d.frames.element(e)) {
      const Mat3 F_gamma =
          Mat3::Identity() +
          surface_gradient(frame, std::span<const Eigen::Vector3d>(
                                      ue.data(), static_cast<std::size_t>(local)));
      const PlaneStressState state =
          solve_director(F_gamma, frame.normal, material, ps_opts);
      for (int j = 0; j < local; ++j) {
        const double w = frame.shape[static_cast<std::size_t>(j)] * frame.area_weight;
        sum[static_cast<std::size_t>(elem[j])] += w * state.director;
        weight[static_cast<std::size_t>(elem[j])] += w;
      }
    }
  }
  for (std::size_t n = 0; n < sum.size(); ++n)
    if (weight[n] > 0.0) sum[n] /= weight[n];
  return sum;
}

Eigen::VectorXd per_node_load_from_file(const SurfaceMesh& mesh, const DofMap& dofs,
                                        const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open load file: " + path);
  Eigen::VectorXd load = Eigen::VectorXd::Zero(dofs.dof_count());
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ss(line);
    int node;
    double fx, fy, fz;
    if (!(ss >> node)) continue;  // blank
    if (!(ss >> fx >> fy >> fz))
      throw ParseError("expected 'node fx fy fz'", line_number);
    if (node < 0 || node >= mesh.node_count())
      throw ParseError("load node index out of range", line_number);
    if (dofs.dof_node(node) < 0)
      throw ParseError("load applied to node without displacement DOFs", line_number);
    load.segment<3>(dofs.dof_index(node, 0)) += Eigen::Vector3d(fx, fy, fz);
  }
  return load;
}

// Symmetry pins for closed meshes: without a boundary the tangent has rigid
// zero modes. Fixes the components that vanish by symmetry of the inflation
// solution at nodes on the +-x and +y axes.
void pin_rigid_modes(const SurfaceMesh& mesh, const DofMap& dofs,
                     std::vector<bool>& mask) {
  auto nearest = [&](const Eigen::Vector3d& target) {
    int best = -1;
    double dist = std::numeric_limits<double>::max();
    for (int dn = 0; dn < dofs.dof_node_count(); ++dn) {
      const double cur = (mesh.nodes[static_cast<std::size_t>(dofs.mesh_node(dn))] -
                          target)
                             .norm();
      if (cur < dist) {
        dist = cur;
        best = dn;
      }
    }
    return best;
  };
  double rx = 0.0, ry = 0.0;
  for (const auto& p : mesh.nodes) {
    rx = std::max(rx, std::abs(p.x()));
    ry = std::max(ry, std::abs(p.y()));
  }
  const int a = nearest({rx, 0, 0});
  const int b = nearest({-rx, 0, 0});
  const int c = nearest({0, ry, 0});
  mask[static_cast<std::size_t>(3 * a + 1)] = true;
  mask[static_cast<std::size_t>(3 * a + 2)] = true;
  mask[static_cast<std::size_t>(3 * b + 1)] = true;
  mask[static_cast<std::size_t>(3 * b + 2)] = true;
  mask[static_cast<std::size_t>(3 * c + 0)] = true;
  mask[static_cast<std::size_t>(3 * c + 2)] = true;
}

void deformed_radii(const SurfaceMesh& mesh, const DofMap& dofs, const Eigen::VectorXd& u,
                    double* max_radius, double* min_radius) {
  double rmax = 0.0, zmax = 0.0;
  for (int dn = 0; dn < dofs.dof_node_count(); ++dn) {
    const Eigen::Vector3d x =
        mesh.nodes[static_cast<std::size_t>(dofs.mesh_node(dn))] + u.segment<3>(3 * dn);
    rmax = std::max(rmax, std::hypot(x.x(), x.y()));
    zmax = std::max(zmax, std::abs(x.z()));
  }
  *max_radius = rmax;
  *min_radius = zmax;
}

}  // namespace

ScenarioConfig load_scenario(const ConfigFile& file) {
  ScenarioConfig cfg;
  cfg.scenario = scenario_from_name(file.get_string("scenario", "name"));
  file.reject_unknown_keys(allowed_keys(cfg.scenario));

  cfg.geometry_order = file.get_int("mesh", "geometry_order", 2);
  cfg.displacement_order = file.get_int("mesh", "displacement_order", 1);
  if (cfg.geometry_order != 1 && cfg.geometry_order != 2)
    throw ConfigError("mesh.geometry_order must be 1 or 2");
  if (cfg.displacement_order != 1 && cfg.displacement_order != 2)
    throw ConfigError("mesh.displacement_order must be 1 or 2");
  if (cfg.displacement_order > cfg.geometry_order)
    throw ConfigError("mesh.displacement_order cannot exceed mesh.geometry_order");

  switch (cfg.scenario) {
    case Scenario::formfind_catenoid:
    case Scenario::solve_cylinder_load:
      cfg.radius = file.get_double("mesh", "radius", 0.5);
      cfg.height = file.get_double(
          "mesh", "height", cfg.scenario == Scenario::formfind_catenoid ? 0.6 : 4.0);
      cfg.axial_divisions = file.get_int("mesh", "axial_divisions", 8);
      cfg.circumferential_divisions =
          file.get_int("mesh", "circumferential_divisions", 16);
      break;
    case Scenario::solve_spheroid_pressure:
      cfg.r_max = file.get_double("mesh", "r_max", 1.0);
      cfg.r_min = file.get_double("mesh", "r_min", 0.5);
      cfg.refinement = file.get_int("mesh", "refinement", 4);
      break;
    case Scenario::formfind_custom:
    case Scenario::solve_custom:
      cfg.mesh_path = file.get_string("mesh", "path");
      break;
  }

  cfg.model = file.get_string("material", "model", "mooney-rivlin");
  const bool needs_material = cfg.scenario == Scenario::solve_cylinder_load ||
                              cfg.scenario == Scenario::solve_spheroid_pressure ||
                              cfg.scenario == Scenario::solve_custom;
  if (needs_material) {
    cfg.E = file.get_double("material", "E");
    cfg.nu = file.get_double("material", "nu");
    cfg.thickness = file.get_double("material", "thickness");
    // Construct once so invalid combinations surface as config-time errors.
    make_material(cfg.model, MaterialParams(cfg.E, cfg.nu, cfg.thickness));
  }

  if (cfg.scenario == Scenario::solve_cylinder_load)
    cfg.load_scale = file.get_double("load", "scale", 4000.0);
  if (cfg.scenario == Scenario::solve_spheroid_pressure)
    cfg.pressure = file.get_double("load", "pressure", 4800.0);
  if (cfg.scenario == Scenario::solve_custom) {
    cfg.load_file = file.get_string("load", "file", "");
    cfg.pressure = file.get_double("load", "pressure", 0.0);
  }

  cfg.solver.rel_tol = file.get_double("solver", "rel_tol", 1e-8);
  cfg.solver.max_newton = file.get_int("solver", "max_newton", 50);
  cfg.solver.load_steps = file.get_int(
      "solver", "load_steps",
      cfg.scenario == Scenario::solve_spheroid_pressure ? 10 : 1);
  cfg.solver.ps_tol_rel = file.get_double("solver", "ps_tol", 1e-9);
  cfg.solver.line_search = file.get_bool("solver", "line_search", false);
  if (!(cfg.solver.rel_tol > 0.0) || !(cfg.solver.ps_tol_rel > 0.0))
    throw ConfigError("solver tolerances must be positive");
  if (cfg.solver.load_steps < 1) throw ConfigError("solver.load_steps must be >= 1");

  cfg.formfind.movement_tol_rel = file.get_double("formfind", "movement_tol", 1e-10);
  cfg.formfind.max_outer = file.get_int("formfind", "max_outer", 500);
  cfg.formfind.snapshot_every = file.get_int("formfind", "snapshot_every", 0);
  cfg.snapshot_every = file.get_int("output", "snapshot_every", 0);
  return cfg;
}

SurfaceMesh build_scenario_mesh(const ScenarioConfig& cfg, int extra_refinement) {
  const int mult = 1 << extra_refinement;
  switch (cfg.scenario) {
    case Scenario::formfind_catenoid:
      return generate_cylinder(cfg.radius, cfg.height, cfg.axial_divisions * mult,
                               cfg.circumferential_divisions * mult,
                               cfg.geometry_order);
    case Scenario::solve_cylinder_load: {
      // The generator builds about the z axis; the load profile runs along
      // the x axis over [0, height].
      SurfaceMesh mesh =
          generate_cylinder(cfg.radius, cfg.height, cfg.axial_divisions * mult,
                            cfg.circumferential_divisions * mult, cfg.geometry_order);
      return transform_mesh(mesh, axis_z_to_x(),
                            Eigen::Vector3d(0.5 * cfg.height, 0.0, 0.0));
    }
    case Scenario::solve_spheroid_pressure:
      return generate_spheroid(cfg.r_max, cfg.r_min, cfg.refinement + extra_refinement,
                               cfg.geometry_order);
    case Scenario::formfind_custom:
    case Scenario::solve_custom: {
      SurfaceMesh mesh = read_off(cfg.mesh_path);
      if (extra_refinement > 0)
        throw ParameterError("custom meshes do not support refinement studies");
      return mesh;
    }
  }
  throw ParameterError("unhandled scenario");
}

SolveRun run_solve(const ScenarioConfig& cfg, const std::string& out_dir,
                   int extra_refinement) {
  SolveRun run;
  run.mesh = build_scenario_mesh(cfg, extra_refinement);
  Discretization d(run.mesh, cfg.displacement_order);
  run.dof_count = d.dofs.dof_count();

  const auto material = make_material(cfg.model, MaterialParams(cfg.E, cfg.nu, cfg.thickness));

  std::vector<bool> mask = d.dofs.boundary_dirichlet_mask(run.mesh);
  LoadSpec load;
  switch (cfg.scenario) {
    case Scenario::solve_cylinder_load: {
      const double length = cfg.height;
      const double scale = cfg.load_scale;
      load.conservative = load_conservative(
          run.mesh, d.frames, d.dofs, [length, scale](const Eigen::Vector3d& X) {
            return scale * X.x() * (length - X.x());
          });
      break;
    }
    case Scenario::solve_spheroid_pressure:
      load.pressure = cfg.pressure;
      pin_rigid_modes(run.mesh, d.dofs, mask);
      break;
    case Scenario::solve_custom:
      if (!cfg.load_file.empty())
        load.conservative = per_node_load_from_file(run.mesh, d.dofs, cfg.load_file);
      load.pressure = cfg.pressure;
      if (load.pressure != 0.0) {
        bool has_boundary = false;
        for (bool b : run.mesh.boundary_node) has_boundary |= b;
        if (!has_boundary) pin_rigid_modes(run.mesh, d.dofs, mask);
      }
      break;
    default:
      throw ParameterError("run_solve: scenario is not a solve scenario");
  }

  SolveResult result =
      solve(run.mesh, d.frames, d.dofs, *material, load, mask, cfg.solver,
            Eigen::VectorXd::Zero(d.dofs.dof_count()));
  run.u = result.u;
  run.report = result.report;
  l2_norms(run.mesh, d, run.u, &run.norm_total, &run.norm_normal, &run.norm_tangential);

  if (!out_dir.empty()) {
    std::vector<NodalField> fields;
    fields.emplace_back("displacement", nodal_displacement(run.mesh, d.dofs, run.u));
    fields.emplace_back("director", nodal_director(run.mesh, d, *material, run.u));
    write_vtk(run.mesh, fields, out_dir + "/solution.vtk");
    write_report_csv(run.report, out_dir + "/residuals.csv");
    std::ofstream report(out_dir + "/report.txt");
    report << report_to_text(run.report);
  }
  return run;
}

FormFindRun run_formfind(const ScenarioConfig& cfg, const std::string& out_dir,
                         int extra_refinement) {
  SurfaceMesh mesh = build_scenario_mesh(cfg, extra_refinement);
  FormFindOptions options = cfg.formfind;
  options.solution_order = cfg.displacement_order;
  if (!out_dir.empty() && options.snapshot_every > 0)
    options.snapshot_prefix = out_dir + "/formfind";

  FormFindRun run;
  run.state = form_find(mesh, options);
  run.area = run.state.area_history.empty() ? discrete_area(mesh)
                                            : run.state.area_history.back();
  if (!out_dir.empty()) {
    write_area_history_csv(run.state, out_dir + "/area_history.csv");
    write_vtk(run.state.mesh, {}, out_dir + "/final.vtk");
    write_off(run.state.mesh, out_dir + "/final.off");
  }
  if (!run.state.converged) {
    std::string why = run.state.quality_collapsed
                          ? "element quality collapsed (surface may be pinching)"
                          : "movement tolerance not reached";
    throw ConvergenceError("form finding did not converge: " + why,
                           run.state.movement_history);
  }
  return run;
}

ConvergenceStudy run_convergence_study(const ScenarioConfig& cfg, int levels,
                                       const std::string& out_dir) {
  if (levels < 3) throw ParameterError("convergence study needs >= 3 levels");
  ConvergenceStudy study;

  const bool formfind = cfg.scenario == Scenario::formfind_catenoid;
  if (!formfind && cfg.scenario != Scenario::solve_cylinder_load)
    throw ParameterError("convergence studies support formfind-catenoid and "
                         "solve-cylinder-load scenarios");

  std::ofstream csv;
  if (!out_dir.empty()) {
    csv.open(out_dir + "/convergence.csv");
    if (!csv) throw IoError("cannot write convergence CSV");
    csv << "# scenario: "
        << (formfind ? "formfind-catenoid" : "solve-cylinder-load") << "\n";
    csv << "# uniform refinement; generator divisions double per level\n";
  }

  if (formfind) {
    const auto reference =
        oracles::catenoid_reference(cfg.radius, 0.5 * cfg.height);
    if (csv.is_open())
      csv << "level,h_m,dofs,area_m2,area_error_m2\n";
    for (int level = 0; level < levels; ++level) {
      FormFindRun run = run_formfind(cfg, "", level);
      const double h = max_edge_length(build_scenario_mesh(cfg, level));
      const double error = std::abs(run.area - reference.area);
      study.h.push_back(h);
      study.dofs.push_back(3 * run.state.mesh.node_count());
      study.error.push_back(error);
      if (csv.is_open())
        csv << level << ',' << csv_num(h) << ',' << study.dofs.back() << ','
            << csv_num(run.area) << ',' << csv_num(error) << '\n';
    }
    study.order = oracles::fit_order(study.h, study.error).order;
    if (csv.is_open()) csv << "# fitted_order " << csv_num(study.order) << "\n";
    return study;
  }

  // Overkill reference: the finest level refined twice more.
  SolveRun reference = run_solve(cfg, "", levels + 1);
  if (csv.is_open()) {
    csv << "# overkill reference: level " << levels + 1 << " with "
        << reference.dof_count << " dofs\n";
    csv << "level,h_m,dofs,l2_normal_m,l2_tangential_m,error_normal_m,error_tangential_m\n";
  }
  for (int level = 0; level < levels; ++level) {
    SolveRun run = run_solve(cfg, "", level);
    const double h = max_edge_length(run.mesh);
    const double err_n = std::abs(reference.norm_normal - run.norm_normal);
    const double err_t = std::abs(reference.norm_tangential - run.norm_tangential);
    study.h.push_back(h);
    study.dofs.push_back(run.dof_count);
    study.error_normal.push_back(err_n);
    study.error_tangential.push_back(err_t);
    if (csv.is_open())
      csv << level << ',' << csv_num(h) << ',' << run.dof_count << ','
          << csv_num(run.norm_normal) << ',' << csv_num(run.norm_tangential) << ','
          << csv_num(err_n) << ',' << csv_num(err_t) << '\n';
  }
  study.order_normal = oracles::fit_order(study.h, study.error_normal).order;
  study.order_tangential = oracles::fit_order(study.h, study.error_tangential).order;
  if (csv.is_open())
    csv << "# fitted_order_normal " << csv_num(study.order_normal)
        << "\n# fitted_order_tangential " << csv_num(study.order_tangential) << "\n";
  return study;
}

PressureSweep run_pressure_sweep(const ScenarioConfig& cfg, const std::string& out_dir) {
  if (cfg.scenario != Scenario::solve_spheroid_pressure)
    throw ParameterError("pressure sweeps require the solve-spheroid-pressure scenario");

  SurfaceMesh mesh = build_scenario_mesh(cfg, 0);
  Discretization d(mesh, cfg.displacement_order);
  const auto material = make_material(cfg.model, MaterialParams(cfg.E, cfg.nu, cfg.thickness));

  std::vector<bool> mask = d.dofs.boundary_dirichlet_mask(mesh);
  pin_rigid_modes(mesh, d.dofs, mask);

  PressureSweep sweep;
  Eigen::VectorXd u = Eigen::VectorXd::Zero(d.dofs.dof_count());
  double rmax = 0.0, rmin = 0.0;
  deformed_radii(mesh, d.dofs, u, &rmax, &rmin);
  sweep.pressure.push_back(0.0);
  sweep.max_radius.push_back(rmax);
  sweep.min_radius.push_back(rmin);

  SolverConfig stepper = cfg.solver;
  stepper.load_steps = 1;  // stepping happens here, one target pressure at a time

  std::string diagnostic;
  for (int step = 1; step <= cfg.solver.load_steps; ++step) {
    const double p = cfg.pressure * step / cfg.solver.load_steps;
    LoadSpec load;
    load.pressure = p;
    try {
      SolveResult result = solve(mesh, d.frames, d.dofs, *material, load, mask, stepper, u);
      u = result.u;
    } catch (const SolverError& err) {
      diagnostic = err.what();
      break;
    }
    deformed_radii(mesh, d.dofs, u, &rmax, &rmin);
    sweep.pressure.push_back(p);
    sweep.max_radius.push_back(rmax);
    sweep.min_radius.push_back(rmin);
    if (!out_dir.empty() && cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0) {
      std::vector<NodalField> fields;
      fields.emplace_back("displacement", nodal_displacement(mesh, d.dofs, u));
      write_vtk(mesh, fields,
                out_dir + "/state_step" + std::to_string(step) + ".vtk");
    }
  }
  sweep.completed =
      static_cast<int>(sweep.pressure.size()) == cfg.solver.load_steps + 1;

  if (!out_dir.empty()) {
    std::ofstream csv(out_dir + "/radii.csv");
    if (!csv) throw IoError("cannot write radii CSV");
    csv << "pressure_Pa,max_radius_m,min_radius_m\n";
    for (std::size_t i = 0; i < sweep.pressure.size(); ++i)
      csv << csv_num(sweep.pressure[i]) << ',' << csv_num(sweep.max_radius[i]) << ','
          << csv_num(sweep.min_radius[i]) << '\n';
    if (!diagnostic.empty()) csv << "# truncated: " << diagnostic << "\n";
  }
  if (!sweep.completed)
    throw ConvergenceError("pressure sweep truncated: " + diagnostic, {});
  return sweep;
}

}  // namespace memfem
