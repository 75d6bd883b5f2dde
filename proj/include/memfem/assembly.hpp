#ifndef MEMFEM_ASSEMBLY_HPP
#define MEMFEM_ASSEMBLY_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>
#include <utility>
#include <vector>

#include "memfem/dof_map.hpp"
#include "memfem/element_frame.hpp"
#include "memfem/material.hpp"
#include "memfem/plane_stress.hpp"

namespace memfem {

using SparseMatrix = Eigen::SparseMatrix<double>;

// Directors stored per (element, quadrature point). Persisting them across
// global Newton iterations and load steps warm-starts the local solves;
// parallel element loops partition the array so no two workers share an entry.
struct PlaneStressCache {
  std::vector<Vec3> director;
  int per_element = 0;

  PlaneStressCache() = default;
  PlaneStressCache(int n_elements, int n_qp)
      : director(static_cast<std::size_t>(n_elements) * n_qp, Vec3::Zero()),
        per_element(n_qp) {}

  Vec3& at(int element, int qp) {
    return director[static_cast<std::size_t>(element) * per_element + qp];
  }
  const Vec3& at(int element, int qp) const {
    return director[static_cast<std::size_t>(element) * per_element + qp];
  }
};

// Assembled global residual and tangent after symmetric Dirichlet
// elimination (unit diagonal on constrained DOFs, zeroed rows/columns).
struct GlobalSystem {
  Eigen::VectorXd residual;  // internal - external; zero on constrained DOFs
  SparseMatrix tangent;
  std::vector<bool> dirichlet_mask;
};

enum class Execution { serial, parallel };

// Internal force and consistent stiffness of one element:
//   f_(j,c)       = sum_qp t w (P_Gamma . grad phi_j)_c
//   K_(jc),(kd)   = sum_qp t w grad phi_j . L_Gamma(c,.,d,.) . grad phi_k
// `u_element` holds the element's displacement nodal values; `ps_row` is the
// element's slice of the warm-start cache (may be null). `energy` accumulates
// t w psi(F) when non-null.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> element_internal(
    std::span<const ElementFrame> frames, std::span<const Eigen::Vector3d> u_element,
    const Material& material, const PlaneStressOptions& ps_opts, Vec3* ps_row,
    double* energy = nullptr, int* ps_iterations = nullptr);

struct InternalAssembly {
  Eigen::VectorXd force;
  std::vector<Eigen::Triplet<double>> triplets;
  double strain_energy = 0.0;
  int max_ps_iterations = 0;
};

// Element loop for the internal terms. The parallel path computes element
// contributions concurrently and scatters them in element order, so the
// result matches the serial path.
InternalAssembly assemble_internal(const SurfaceMesh& mesh, const FrameCache& frames,
                                   const DofMap& dofs, const Material& material,
                                   const Eigen::VectorXd& u,
                                   const PlaneStressOptions& ps_opts,
                                   PlaneStressCache& ps_cache,
                                   Execution mode = Execution::parallel);

// Dead load along the reference normal: f_(j,c) = int g(X) N^h_c phi_j dGamma.
Eigen::VectorXd load_conservative(const SurfaceMesh& mesh, const FrameCache& frames,
                                  const DofMap& dofs,
                                  const std::function<double(const Eigen::Vector3d&)>& g);

// Follower pressure pulled back to the reference surface with the Nanson
// transform: f_(j,c) = int p (cof F . N^h)_c phi_j dGamma, where F includes
// the plane-stress director. Recomputed every Newton iteration.
Eigen::VectorXd load_pressure(const SurfaceMesh& mesh, const FrameCache& frames,
                              const DofMap& dofs, const Material& material,
                              const Eigen::VectorXd& u,
                              const PlaneStressOptions& ps_opts,
                              PlaneStressCache& ps_cache, double pressure,
                              Execution mode = Execution::parallel);

// Full system: residual = internal - external, symmetric Dirichlet
// elimination applied to the tangent.
GlobalSystem assemble(const SurfaceMesh& mesh, const FrameCache& frames,
                      const DofMap& dofs, const Material& material,
                      const Eigen::VectorXd& u, const Eigen::VectorXd& external,
                      const std::vector<bool>& dirichlet_mask,
                      const PlaneStressOptions& ps_opts, PlaneStressCache& ps_cache,
                      Execution mode = Execution::parallel,
                      double* strain_energy = nullptr);

// Gathers an element's displacement nodal vectors from the global vector.
void gather_element_u(const SurfaceMesh& mesh, const DofMap& dofs, int element,
                      const Eigen::VectorXd& u, std::span<Eigen::Vector3d> out);

}  // namespace memfem

#endif
