#ifndef MEMFEM_MESH_IO_HPP
#define MEMFEM_MESH_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include "memfem/surface_mesh.hpp"

namespace memfem {

// ASCII OFF reader. Triangle faces only; order-2 meshes use a "# order 2"
// tag line after the OFF header and 6-index face lines. Coordinates are
// written with 17 significant digits, so a read/write round trip is
// bit-exact.
SurfaceMesh read_off(const std::string& path);
void write_off(const SurfaceMesh& mesh, const std::string& path);

using NodalField = std::pair<std::string, std::vector<Eigen::Vector3d>>;

// Legacy ASCII VTK unstructured grid with per-node vector fields
// (triangles as cell type 5, quadratic triangles as 22).
void write_vtk(const SurfaceMesh& mesh, const std::vector<NodalField>& nodal_fields,
               const std::string& path);

}  // namespace memfem

#endif
