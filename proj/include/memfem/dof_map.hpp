#ifndef MEMFEM_DOF_MAP_HPP
#define MEMFEM_DOF_MAP_HPP

#include <vector>

#include "memfem/surface_mesh.hpp"

namespace memfem {

// Maps mesh nodes to displacement DOFs (3 per displacement node).
//
// With displacement order equal to the geometry order every mesh node carries
// DOFs; with order-1 displacements on an order-2 mesh only the element vertex
// nodes do (super-parametric approximation).
class DofMap {
 public:
  DofMap(const SurfaceMesh& mesh, int displacement_order);

  int displacement_order() const { return disp_order_; }
  int nodes_per_element() const { return disp_order_ == 1 ? 3 : 6; }
  int dof_node_count() const { return static_cast<int>(dof_node_to_node_.size()); }
  int dof_count() const { return 3 * dof_node_count(); }

  // Dense dof-node index of a mesh node, or -1 when the node carries no DOFs.
  int dof_node(int mesh_node) const {
    return node_to_dof_node_[static_cast<std::size_t>(mesh_node)];
  }
  int mesh_node(int dof_node) const {
    return dof_node_to_node_[static_cast<std::size_t>(dof_node)];
  }
  int dof_index(int mesh_node, int comp) const {
    return 3 * dof_node(mesh_node) + comp;
  }

  // All three components of boundary-flagged displacement nodes.
  std::vector<bool> boundary_dirichlet_mask(const SurfaceMesh& mesh) const;

 private:
  int disp_order_;
  std::vector<int> node_to_dof_node_;
  std::vector<int> dof_node_to_node_;
};

}  // namespace memfem

#endif
