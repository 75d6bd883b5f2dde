#include "memfem/dof_map.hpp"

#include "memfem/errors.hpp"

namespace memfem {

DofMap::DofMap(const SurfaceMesh& mesh, int displacement_order)
    : disp_order_(displacement_order) {
  if (displacement_order != 1 && displacement_order != 2)
    throw ParameterError("displacement order must be 1 or 2");
  if (displacement_order > mesh.geometry_order)
    throw ParameterError("displacement order above geometry order is not supported");

  node_to_dof_node_.assign(mesh.nodes.size(), -1);
  const int local = nodes_per_element();
  for (const auto& elem : mesh.elements)
    for (int k = 0; k < local; ++k) node_to_dof_node_[static_cast<std::size_t>(elem[k])] = 0;

  for (std::size_t n = 0; n < node_to_dof_node_.size(); ++n) {
    if (node_to_dof_node_[n] == 0) {
      node_to_dof_node_[n] = static_cast<int>(dof_node_to_node_.size());
      dof_node_to_node_.push_back(static_cast<int>(n));
    }
  }
}

std::vector<bool> DofMap::boundary_dirichlet_mask(const SurfaceMesh& mesh) const {
  std::vector<bool> mask(static_cast<std::size_t>(dof_count()), false);
  for (int dn = 0; dn < dof_node_count(); ++dn) {
    if (mesh.boundary_node[static_cast<std::size_t>(mesh_node(dn))])
      for (int c = 0; c < 3; ++c) mask[static_cast<std::size_t>(3 * dn + c)] = true;
  }
  return mask;
}

}  // namespace memfem
