#include "memfem/form_finding.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <cmath>
#include <fstream>
#include <map>

#include "memfem/dof_map.hpp"
#include "memfem/element_frame.hpp"
#include "memfem/errors.hpp"
#include "memfem/mesh_io.hpp"

namespace memfem {

namespace {

struct LaplaceSystem {
  Eigen::SparseMatrix<double> stiffness;        // scalar, free x free block + identity
  Eigen::Matrix<double, Eigen::Dynamic, 3> rhs; // -residual per component
};

// Scalar Laplace-Beltrami stiffness K_ij = int grad(phi_i).grad(phi_j) and
// the geometric residual r_jc = int (grad phi_j)_c of the current surface.
// One scalar matrix serves all three coordinate components.
LaplaceSystem assemble_laplace(const SurfaceMesh& mesh, const DofMap& dofs,
                               const FrameCache& frames,
                               const std::vector<bool>& fixed_node) {
  const int n = dofs.dof_node_count();
  const int local = dofs.nodes_per_element();
  LaplaceSystem sys;
  sys.rhs = Eigen::Matrix<double, Eigen::Dynamic, 3>::Zero(n, 3);

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.element_count()) *
                   static_cast<std::size_t>(local) * static_cast<std::size_t>(local));

  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto& elem = mesh.elements[static_cast<std::size_t>(e)];
    for (const ElementFrame& frame : frames.element(e)) {
      for (int j = 0; j < local; ++j) {
        const int nj = dofs.dof_node(elem[j]);
        const Eigen::Vector3d& gj = frame.grad[static_cast<std::size_t>(j)];
        if (!fixed_node[static_cast<std::size_t>(nj)])
          sys.rhs.row(nj) -= frame.area_weight * gj.transpose();
        for (int k = 0; k < local; ++k) {
          const int nk = dofs.dof_node(elem[k]);
          if (fixed_node[static_cast<std::size_t>(nj)] ||
              fixed_node[static_cast<std::size_t>(nk)])
            continue;
          triplets.emplace_back(
              nj, nk,
              frame.area_weight * gj.dot(frame.grad[static_cast<std::size_t>(k)]));
        }
      }
    }
  }
  for (int i = 0; i < n; ++i)
    if (fixed_node[static_cast<std::size_t>(i)]) triplets.emplace_back(i, i, 1.0);

  sys.stiffness.resize(n, n);
  sys.stiffness.setFromTriplets(triplets.begin(), triplets.end());
  return sys;
}

SurfaceMesh step_impl(const SurfaceMesh& mesh, int solution_order, double* max_movement) {
  bool has_boundary = false;
  for (bool b : mesh.boundary_node) has_boundary |= b;
  if (!has_boundary)
    throw ParameterError(
        "form finding needs a fixed boundary; a closed surface is ill-posed");

  const int order = solution_order == 0 ? mesh.geometry_order : solution_order;
  const ReferenceElement geom_ref(mesh.geometry_order);
  const ReferenceElement disp_ref(order);
  const DofMap dofs(mesh, order);
  const FrameCache frames = build_frame_cache(mesh, geom_ref, disp_ref);

  std::vector<bool> fixed(static_cast<std::size_t>(dofs.dof_node_count()), false);
  for (int dn = 0; dn < dofs.dof_node_count(); ++dn)
    fixed[static_cast<std::size_t>(dn)] =
        mesh.boundary_node[static_cast<std::size_t>(dofs.mesh_node(dn))];

  const LaplaceSystem sys = assemble_laplace(mesh, dofs, frames, fixed);

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(sys.stiffness);
  if (ldlt.info() != Eigen::Success)
    throw SingularSystemError("degenerate mesh: Laplace-Beltrami stiffness not SPD");
  const Eigen::Matrix<double, Eigen::Dynamic, 3> displacement = ldlt.solve(sys.rhs);

  SurfaceMesh out = mesh;
  double moved = 0.0;
  auto apply = [&](int node, const Eigen::Vector3d& du) {
    out.nodes[static_cast<std::size_t>(node)] += du;
    moved = std::max(moved, du.norm());
  };

  for (int dn = 0; dn < dofs.dof_node_count(); ++dn) {
    if (fixed[static_cast<std::size_t>(dn)]) continue;
    apply(dofs.mesh_node(dn), displacement.row(dn).transpose());
  }
  if (order == 1 && mesh.geometry_order == 2) {
    // Midside nodes follow the linear displacement field along their edge.
    std::map<std::pair<int, int>, bool> updated;
    for (const auto& elem : mesh.elements) {
      for (int k = 0; k < 3; ++k) {
        const int a = elem[(k + 1) % 3];
        const int b = elem[(k + 2) % 3];
        const int mid = elem[3 + k];
        if (mesh.boundary_node[static_cast<std::size_t>(mid)]) continue;
        const auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
        if (updated.emplace(key, true).second) {
          const Eigen::Vector3d du =
              0.5 * (displacement.row(dofs.dof_node(a)).transpose() +
                     displacement.row(dofs.dof_node(b)).transpose());
          apply(mid, du);
        }
      }
    }
  }
  if (max_movement) *max_movement = moved;
  return out;
}

// Area and smallest quadrature weight in one sweep. Element partials are
// summed in element order so the totals do not depend on the thread count;
// degenerate elements count as zero quality instead of throwing.
void area_and_quality(const SurfaceMesh& mesh, double* area, double* min_weight) {
  const ReferenceElement ref(mesh.geometry_order);
  const int ne = mesh.element_count();
  std::vector<double> partial(static_cast<std::size_t>(ne), 0.0);
  std::vector<double> elem_min(static_cast<std::size_t>(ne), 0.0);
#pragma omp parallel for schedule(static)
  for (int e = 0; e < ne; ++e) {
    try {
      double sum = 0.0;
      double mn = std::numeric_limits<double>::max();
      for (const ElementFrame& f : element_frames(mesh, e, ref)) {
        sum += f.area_weight;
        mn = std::min(mn, f.area_weight);
      }
      partial[static_cast<std::size_t>(e)] = sum;
      elem_min[static_cast<std::size_t>(e)] = mn;
    } catch (const GeometryError&) {
      elem_min[static_cast<std::size_t>(e)] = 0.0;
    }
  }
  double total = 0.0;
  double mj = std::numeric_limits<double>::max();
  for (int e = 0; e < ne; ++e) {
    total += partial[static_cast<std::size_t>(e)];
    mj = std::min(mj, elem_min[static_cast<std::size_t>(e)]);
  }
  if (area) *area = total;
  if (min_weight) *min_weight = mj;
}

}  // namespace

SurfaceMesh laplace_beltrami_step(const SurfaceMesh& mesh) {
  return step_impl(mesh, 0, nullptr);
}

SurfaceMesh laplace_beltrami_step(const SurfaceMesh& mesh, int solution_order,
                                  double* max_movement) {
  return step_impl(mesh, solution_order, max_movement);
}

FormFindState form_find(const SurfaceMesh& mesh, const FormFindOptions& options) {
  FormFindState state;
  state.mesh = mesh;
  const double tol = options.movement_tol_rel * mesh.bounding_box_diagonal();
  double initial_quality = 0.0;
  area_and_quality(mesh, nullptr, &initial_quality);

  for (int n = 0; n < options.max_outer; ++n) {
    double moved = 0.0;
    SurfaceMesh next = step_impl(state.mesh, options.solution_order, &moved);
    state.mesh = std::move(next);
    state.iterations = n + 1;
    state.movement_history.push_back(moved);

    double area = 0.0, quality = 0.0;
    area_and_quality(state.mesh, &area, &quality);
    state.area_history.push_back(area);

    if (options.snapshot_every > 0 && (n + 1) % options.snapshot_every == 0)
      write_vtk(state.mesh, {},
                options.snapshot_prefix + "_iter" + std::to_string(n + 1) + ".vtk");

    if (quality < options.quality_floor * initial_quality) {
      // Pinching toward the discontinuous (two-disk) solution; report, do not repair.
      state.quality_collapsed = true;
      return state;
    }
    if (moved <= tol) {
      state.converged = true;
      return state;
    }
  }
  return state;
}

double discrete_area(const SurfaceMesh& mesh) {
  const ReferenceElement ref(mesh.geometry_order);
  double area = 0.0;
  for (int e = 0; e < mesh.element_count(); ++e)
    for (const ElementFrame& f : element_frames(mesh, e, ref)) area += f.area_weight;
  return area;
}

void write_area_history_csv(const FormFindState& state, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write area history CSV: " + path);
  out << "iteration,area_m2,max_movement_m\n";
  for (std::size_t i = 0; i < state.area_history.size(); ++i) {
    char a[32], m[32];
    std::snprintf(a, sizeof(a), "%.17g", state.area_history[i]);
    std::snprintf(m, sizeof(m), "%.17g", state.movement_history[i]);
    out << (i + 1) << ',' << a << ',' << m << '\n';
  }
}

}  // namespace memfem
