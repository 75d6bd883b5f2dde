#ifndef MEMFEM_NEWTON_HPP
#define MEMFEM_NEWTON_HPP

#include <string>

#include "memfem/assembly.hpp"

namespace memfem {

struct SolverConfig {
  double rel_tol = 1e-8;        // on |residual| / |external| (free DOFs)
  double abs_tol_scale = 1e-10; // fallback |residual| <= scale * E * t when external = 0
  int max_newton = 50;
  int load_steps = 1;           // pressure scenarios typically use 10
  double ps_tol_rel = 1e-9;     // plane-stress tolerance relative to E
  bool line_search = false;     // backtracking halving, max 8; off by default
  Execution mode = Execution::parallel;
};

struct StepRecord {
  int step = 0;
  double load_factor = 1.0;
  std::vector<double> residuals;  // one entry per residual evaluation
  std::vector<double> energies;   // potential energy per evaluation (conservative runs)
  int iterations = 0;             // linear solves performed
  bool converged = false;
};

struct SolveReport {
  std::vector<StepRecord> steps;
  double final_energy = 0.0;  // strain energy - external work at the solution
  bool converged = false;
  std::string rate;  // "quadratic", "linear", or "unclassified" tail behavior

  int total_iterations() const {
    int n = 0;
    for (const auto& s : steps) n += s.iterations;
    return n;
  }
};

// External loading: a fixed conservative vector, a follower pressure, or
// both. Load stepping scales the whole specification linearly.
struct LoadSpec {
  Eigen::VectorXd conservative;  // empty means none
  double pressure = 0.0;
};

// Direct sparse symmetric factorization of the eliminated system; verifies
// the linear residual to 1e-12 relative (one refinement pass if needed).
// Throws SingularSystemError with the offending DOF on zero pivots.
Eigen::VectorXd linear_solve(const GlobalSystem& system);

struct SolveResult {
  Eigen::VectorXd u;
  SolveReport report;
};

// Global Newton iteration on the membrane equilibrium equations.
// At each load step: solve tangent . du = -residual until the free-DOF
// residual satisfies the tolerance. The plane-stress cache persists across
// iterations and steps.
SolveResult solve(const SurfaceMesh& mesh, const FrameCache& frames, const DofMap& dofs,
                  const Material& material, const LoadSpec& load,
                  const std::vector<bool>& dirichlet_mask, const SolverConfig& config,
                  const Eigen::VectorXd& initial_u);

void write_report_csv(const SolveReport& report, const std::string& path);
std::string report_to_text(const SolveReport& report);

}  // namespace memfem

#endif
