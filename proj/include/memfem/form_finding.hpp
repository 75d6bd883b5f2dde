#ifndef MEMFEM_FORM_FINDING_HPP
#define MEMFEM_FORM_FINDING_HPP

#include <functional>
#include <string>
#include <vector>

#include "memfem/surface_mesh.hpp"

namespace memfem {

// Minimal-surface form finding: repeatedly solve the Laplace-Beltrami
// problem for the nodal positions on the current discrete surface and update
// the geometry, keeping boundary nodes fixed.

struct FormFindOptions {
  // Convergence on the max nodal movement per iteration, relative to the
  // initial bounding-box diagonal. Movement, not area change: area can
  // stagnate while the parametrization still drifts tangentially.
  double movement_tol_rel = 1e-10;
  int max_outer = 500;
  // Polynomial order of the solved position/displacement field; 0 means the
  // mesh geometry order (isoparametric). Order 1 on an order-2 mesh moves
  // midside nodes by the interpolated linear displacement.
  int solution_order = 0;
  int snapshot_every = 0;  // VTK snapshot period, 0 disables
  std::string snapshot_prefix;
  // Abort when the smallest surface Jacobian collapses below this fraction
  // of its initial value (pinch-off toward a discontinuous solution).
  double quality_floor = 1e-8;
};

struct FormFindState {
  SurfaceMesh mesh;
  int iterations = 0;
  std::vector<double> area_history;      // area after each update [m^2]
  std::vector<double> movement_history;  // max nodal movement per iteration [m]
  bool converged = false;
  bool quality_collapsed = false;
};

// One fixed-point update solving in the full geometry space (midside nodes of
// order-2 meshes are independent unknowns). Dirichlet data are the current
// boundary positions. Throws ParameterError when the mesh has no boundary and
// SingularSystemError for degenerate meshes.
SurfaceMesh laplace_beltrami_step(const SurfaceMesh& mesh);

// As above with an explicit solution order; reports the max nodal movement.
SurfaceMesh laplace_beltrami_step(const SurfaceMesh& mesh, int solution_order,
                                  double* max_movement);

FormFindState form_find(const SurfaceMesh& mesh, const FormFindOptions& options = {});

// Sum of quadrature area weights over all elements.
double discrete_area(const SurfaceMesh& mesh);

void write_area_history_csv(const FormFindState& state, const std::string& path);

}  // namespace memfem

#endif
