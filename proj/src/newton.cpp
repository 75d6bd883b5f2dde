#include "memfem/newton.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <fstream>
#include <sstream>

#include "memfem/errors.hpp"

namespace memfem {

namespace {

double free_norm(const Eigen::VectorXd& v, const std::vector<bool>& mask) {
  double s = 0.0;
  for (int i = 0; i < v.size(); ++i)
    if (!mask[static_cast<std::size_t>(i)]) s += v[i] * v[i];
  return std::sqrt(s);
}

// Tail classification from the residual history of the last load step.
std::string classify_rate(const std::vector<double>& r) {
  if (r.size() < 4) return "unclassified";
  // Fit log r_{k+1} against log r_k over the last three transitions.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t k = r.size() - 4; k + 1 < r.size(); ++k) {
    if (r[k] <= 0.0 || r[k + 1] <= 0.0) return "unclassified";
    const double x = std::log(r[k]);
    const double y = std::log(r[k + 1]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-30) return "unclassified";
  const double slope = (n * sxy - sx * sy) / denom;
  if (slope > 1.5) return "quadratic";
  if (slope > 0.5) return "linear";
  return "unclassified";
}

}  // namespace

Eigen::VectorXd linear_solve(const GlobalSystem& system) {
  Eigen::SimplicialLDLT<SparseMatrix> ldlt;
  ldlt.compute(system.tangent);
  if (ldlt.info() != Eigen::Success)
    throw SingularSystemError("sparse factorization failed");

  // Locate a vanishing pivot explicitly so the error names the DOF.
  const auto& D = ldlt.vectorD();
  double dmax = 0.0;
  for (int i = 0; i < D.size(); ++i) dmax = std::max(dmax, std::abs(D[i]));
  for (int i = 0; i < D.size(); ++i) {
    if (std::abs(D[i]) <= 1e-14 * dmax) {
      const int dof = ldlt.permutationPinv().indices()[i];
      throw SingularSystemError("zero pivot in tangent factorization", dof);
    }
  }

  const Eigen::VectorXd rhs = -system.residual;
  Eigen::VectorXd x = ldlt.solve(rhs);
  const double rhs_norm = rhs.norm();
  if (rhs_norm > 0.0) {
    Eigen::VectorXd lin_res = rhs - system.tangent * x;
    if (lin_res.norm() > 1e-12 * rhs_norm) {
      x += ldlt.solve(lin_res);  // one refinement pass
      lin_res = rhs - system.tangent * x;
      if (lin_res.norm() > 1e-10 * rhs_norm)
        throw SolverError("linear solve inaccurate: relative residual " +
                          std::to_string(lin_res.norm() / rhs_norm));
    }
  }
  return x;
}

SolveResult solve(const SurfaceMesh& mesh, const FrameCache& frames, const DofMap& dofs,
                  const Material& material, const LoadSpec& load,
                  const std::vector<bool>& dirichlet_mask, const SolverConfig& config,
                  const Eigen::VectorXd& initial_u) {
  if (config.load_steps < 1) throw ParameterError("load_steps must be >= 1");
  const int n = dofs.dof_count();
  Eigen::VectorXd u = initial_u.size() == n ? initial_u : Eigen::VectorXd::Zero(n);

  const PlaneStressOptions ps_opts = default_plane_stress_options(material, config.ps_tol_rel);
  PlaneStressCache ps_cache(mesh.element_count(), frames.frames_per_element);

  const double abs_floor =
      config.abs_tol_scale * material.params().E * material.params().thickness;
  const bool has_conservative = load.conservative.size() == n;

  SolveResult result;
  result.report.converged = true;

  for (int step = 1; step <= config.load_steps; ++step) {
    const double factor = static_cast<double>(step) / config.load_steps;
    StepRecord record;
    record.step = step;
    record.load_factor = factor;

    auto external = [&](const Eigen::VectorXd& at_u) {
      Eigen::VectorXd ext = Eigen::VectorXd::Zero(n);
      if (has_conservative) ext += factor * load.conservative;
      if (load.pressure != 0.0)
        ext += load_pressure(mesh, frames, dofs, material, at_u, ps_opts, ps_cache,
                             factor * load.pressure, config.mode);
      return ext;
    };

    bool step_converged = false;
    for (int iter = 0; iter <= config.max_newton; ++iter) {
      double strain_energy = 0.0;
      const Eigen::VectorXd ext = external(u);
      GlobalSystem sys = assemble(mesh, frames, dofs, material, u, ext, dirichlet_mask,
                                  ps_opts, ps_cache, config.mode, &strain_energy);

      const double rnorm = free_norm(sys.residual, dirichlet_mask);
      const double ext_norm = free_norm(ext, dirichlet_mask);
      record.residuals.push_back(rnorm);
      record.energies.push_back(strain_energy -
                                (has_conservative ? factor * load.conservative.dot(u) : 0.0));
      result.report.final_energy = record.energies.back();

      const double tol = ext_norm > 0.0 ? config.rel_tol * ext_norm : abs_floor;
      if (rnorm <= tol) {
        step_converged = true;
        break;
      }
      if (iter == config.max_newton) break;

      const Eigen::VectorXd du = linear_solve(sys);

      double alpha = 1.0;
      if (config.line_search) {
        // Backtracking on the residual norm, at most 8 halvings.
        for (int ls = 0; ls < 8; ++ls) {
          const Eigen::VectorXd trial = u + alpha * du;
          try {
            PlaneStressCache probe = ps_cache;
            Eigen::VectorXd trial_ext = Eigen::VectorXd::Zero(n);
            if (has_conservative) trial_ext += factor * load.conservative;
            if (load.pressure != 0.0)
              trial_ext += load_pressure(mesh, frames, dofs, material, trial, ps_opts,
                                         probe, factor * load.pressure, config.mode);
            GlobalSystem trial_sys =
                assemble(mesh, frames, dofs, material, trial, trial_ext, dirichlet_mask,
                         ps_opts, probe, config.mode);
            if (free_norm(trial_sys.residual, dirichlet_mask) < rnorm) break;
          } catch (const GeometryError&) {
            // inverted trial state; halve
          }
          alpha *= 0.5;
        }
      }
      u += alpha * du;
      ++record.iterations;
    }

    record.converged = step_converged;
    result.report.steps.push_back(record);
    if (!step_converged) {
      result.report.converged = false;
      result.report.rate = classify_rate(record.residuals);
      result.u = u;
      throw ConvergenceError("Newton did not converge at load step " +
                                 std::to_string(step) + " after " +
                                 std::to_string(record.iterations) + " iterations",
                             record.residuals);
    }
  }

  result.report.rate = classify_rate(result.report.steps.back().residuals);
  result.u = u;
  return result;
}

void write_report_csv(const SolveReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write report CSV: " + path);
  out << "step,iteration,residual_N\n";
  for (const auto& s : report.steps) {
    for (std::size_t k = 0; k < s.residuals.size(); ++k) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.17g", s.residuals[k]);
      out << s.step << ',' << k << ',' << buf << '\n';
    }
  }
}

std::string report_to_text(const SolveReport& report) {
  std::ostringstream os;
  os << "newton solve: " << (report.converged ? "converged" : "FAILED")
     << ", rate " << report.rate << "\n";
  for (const auto& s : report.steps) {
    os << "  step " << s.step << " (factor " << s.load_factor << "): " << s.iterations
       << " iterations, residuals";
    for (double r : s.residuals) {
      char buf[16];
      std::snprintf(buf, sizeof(buf), " %.3e", r);
      os << buf;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace memfem
