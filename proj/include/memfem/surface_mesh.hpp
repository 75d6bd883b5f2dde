#ifndef MEMFEM_SURFACE_MESH_HPP
#define MEMFEM_SURFACE_MESH_HPP

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace memfem {

// Triangulated surface embedded in R^3.
//
// Elements store 3 node indices for geometry order 1 and 6 for order 2
// (vertices first, then midside nodes; midside node 3+k lies on the edge
// opposite vertex k). Unused slots hold -1. The mesh is treated as immutable
// after construction; concurrent reads are safe.
struct SurfaceMesh {
  std::vector<Eigen::Vector3d> nodes;
  std::vector<std::array<int, 6>> elements;
  int geometry_order = 1;
  std::vector<bool> boundary_node;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int element_count() const { return static_cast<int>(elements.size()); }
  int nodes_per_element() const { return geometry_order == 1 ? 3 : 6; }

  // Recomputes boundary_node from edge incidence: an edge shared by exactly
  // one element is a boundary edge; its vertices and midside node (order 2)
  // are flagged. Throws GeometryError on edges shared by more than two
  // elements or out-of-range connectivity.
  void compute_boundary_flags();

  // Bounding-box diagonal, used for relative movement tolerances.
  double bounding_box_diagonal() const;
};

// Open-ended cylinder about the z axis, centered at x = y = 0, spanning
// z in [-height/2, height/2]. Midside nodes (order 2) are projected radially
// onto the exact cylinder. Both end rings are flagged as boundary.
SurfaceMesh generate_cylinder(double radius, double height, int axial_divisions,
                              int circumferential_divisions, int geometry_order);

// Closed oblate spheroid (x^2+y^2)/r_max^2 + z^2/r_min^2 = 1 by recursive
// subdivision of an octahedron; all nodes (midside included) lie on the exact
// surface. No boundary nodes.
SurfaceMesh generate_spheroid(double r_max, double r_min, int refinement,
                              int geometry_order);

// Apply an affine map x -> R x + shift to every node.
SurfaceMesh transform_mesh(const SurfaceMesh& mesh, const Eigen::Matrix3d& rotation,
                           const Eigen::Vector3d& shift);

// Longest element edge (vertex-to-vertex), a mesh-size measure for
// convergence studies.
double max_edge_length(const SurfaceMesh& mesh);

}  // namespace memfem

#endif
