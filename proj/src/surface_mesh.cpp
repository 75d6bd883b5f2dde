#include "memfem/surface_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "memfem/errors.hpp"

namespace memfem {

namespace {

using Edge = std::pair<int, int>;

Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Adds midside nodes on every vertex edge. `project` maps a chord midpoint
// onto the target surface.
template <typename Projector>
void add_midside_nodes(SurfaceMesh& mesh, Projector&& project) {
  std::map<Edge, int> edge_node;
  for (auto& elem : mesh.elements) {
    for (int k = 0; k < 3; ++k) {
      const int a = elem[(k + 1) % 3];
      const int b = elem[(k + 2) % 3];
      const Edge e = make_edge(a, b);
      auto it = edge_node.find(e);
      if (it == edge_node.end()) {
        Eigen::Vector3d mid = project(0.5 * (mesh.nodes[a] + mesh.nodes[b]));
        const int idx = mesh.node_count();
        mesh.nodes.push_back(mid);
        it = edge_node.emplace(e, idx).first;
      }
      elem[3 + k] = it->second;
    }
  }
  mesh.geometry_order = 2;
}

}  // namespace

void SurfaceMesh::compute_boundary_flags() {
  boundary_node.assign(nodes.size(), false);
  std::map<Edge, int> edge_count;
  for (int e = 0; e < element_count(); ++e) {
    for (int k = 0; k < 3; ++k) {
      const int a = elements[e][(k + 1) % 3];
      const int b = elements[e][(k + 2) % 3];
      if (a < 0 || b < 0 || a >= node_count() || b >= node_count())
        throw GeometryError("element " + std::to_string(e) +
                            " references node out of range");
      ++edge_count[make_edge(a, b)];
    }
  }
  for (const auto& [edge, count] : edge_count) {
    if (count > 2)
      throw GeometryError("non-manifold edge (" + std::to_string(edge.first) + "," +
                          std::to_string(edge.second) + ") shared by " +
                          std::to_string(count) + " elements");
  }
  for (int e = 0; e < element_count(); ++e) {
    for (int k = 0; k < 3; ++k) {
      const int a = elements[e][(k + 1) % 3];
      const int b = elements[e][(k + 2) % 3];
      if (edge_count[make_edge(a, b)] == 1) {
        boundary_node[a] = true;
        boundary_node[b] = true;
        if (geometry_order == 2) boundary_node[elements[e][3 + k]] = true;
      }
    }
  }
}

double SurfaceMesh::bounding_box_diagonal() const {
  if (nodes.empty()) return 0.0;
  Eigen::Vector3d lo = nodes.front(), hi = nodes.front();
  for (const auto& p : nodes) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

SurfaceMesh generate_cylinder(double radius, double height, int axial_divisions,
                              int circumferential_divisions, int geometry_order) {
  if (radius <= 0.0 || height <= 0.0)
    throw ParameterError("cylinder radius and height must be positive");
  if (axial_divisions < 2 || circumferential_divisions < 3)
    throw ParameterError("cylinder needs >= 2 axial and >= 3 circumferential divisions");
  if (geometry_order != 1 && geometry_order != 2)
    throw ParameterError("geometry order must be 1 or 2");

  const int na = axial_divisions;
  const int nc = circumferential_divisions;
  SurfaceMesh mesh;
  mesh.geometry_order = 1;
  mesh.nodes.reserve(static_cast<std::size_t>((na + 1) * nc));
  for (int i = 0; i <= na; ++i) {
    const double z = -0.5 * height + height * static_cast<double>(i) / na;
    for (int j = 0; j < nc; ++j) {
      const double t = 2.0 * M_PI * static_cast<double>(j) / nc;
      mesh.nodes.emplace_back(radius * std::cos(t), radius * std::sin(t), z);
    }
  }
  auto vid = [nc](int i, int j) { return i * nc + (j % nc); };
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < nc; ++j) {
      // Split each quad so both triangles wind with outward (radial) normals.
      mesh.elements.push_back({vid(i, j), vid(i, j + 1), vid(i + 1, j), -1, -1, -1});
      mesh.elements.push_back(
          {vid(i, j + 1), vid(i + 1, j + 1), vid(i + 1, j), -1, -1, -1});
    }
  }
  if (geometry_order == 2) {
    add_midside_nodes(mesh, [radius](const Eigen::Vector3d& p) {
      const double r = std::hypot(p.x(), p.y());
      return Eigen::Vector3d(p.x() * radius / r, p.y() * radius / r, p.z());
    });
  }
  mesh.compute_boundary_flags();
  return mesh;
}

SurfaceMesh generate_spheroid(double r_max, double r_min, int refinement,
                              int geometry_order) {
  if (!(r_max >= r_min && r_min > 0.0))
    throw ParameterError("spheroid radii must satisfy r_max >= r_min > 0");
  if (refinement < 0) throw ParameterError("refinement must be non-negative");
  if (geometry_order != 1 && geometry_order != 2)
    throw ParameterError("geometry order must be 1 or 2");

  // Octahedron on the unit sphere, outward winding.
  SurfaceMesh mesh;
  mesh.nodes = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  mesh.elements = {{0, 2, 4, -1, -1, -1}, {2, 1, 4, -1, -1, -1},
                   {1, 3, 4, -1, -1, -1}, {3, 0, 4, -1, -1, -1},
                   {2, 0, 5, -1, -1, -1}, {1, 2, 5, -1, -1, -1},
                   {3, 1, 5, -1, -1, -1}, {0, 3, 5, -1, -1, -1}};

  for (int level = 0; level < refinement; ++level) {
    std::map<Edge, int> edge_node;
    auto midpoint = [&](int a, int b) {
      const Edge e = make_edge(a, b);
      auto it = edge_node.find(e);
      if (it == edge_node.end()) {
        Eigen::Vector3d m = (mesh.nodes[a] + mesh.nodes[b]).normalized();
        const int idx = mesh.node_count();
        mesh.nodes.push_back(m);
        it = edge_node.emplace(e, idx).first;
      }
      return it->second;
    };
    std::vector<std::array<int, 6>> refined;
    refined.reserve(mesh.elements.size() * 4);
    for (const auto& elem : mesh.elements) {
      const int v0 = elem[0], v1 = elem[1], v2 = elem[2];
      const int m01 = midpoint(v0, v1);
      const int m12 = midpoint(v1, v2);
      const int m20 = midpoint(v2, v0);
      refined.push_back({v0, m01, m20, -1, -1, -1});
      refined.push_back({v1, m12, m01, -1, -1, -1});
      refined.push_back({v2, m20, m12, -1, -1, -1});
      refined.push_back({m01, m12, m20, -1, -1, -1});
    }
    mesh.elements = std::move(refined);
  }

  if (geometry_order == 2) {
    add_midside_nodes(
        mesh, [](const Eigen::Vector3d& p) { return p.normalized(); });
  }
  // Map the unit sphere onto the spheroid; keeps every node on the surface.
  for (auto& p : mesh.nodes) p = Eigen::Vector3d(r_max * p.x(), r_max * p.y(), r_min * p.z());
  mesh.compute_boundary_flags();
  return mesh;
}

SurfaceMesh transform_mesh(const SurfaceMesh& mesh, const Eigen::Matrix3d& rotation,
                           const Eigen::Vector3d& shift) {
  SurfaceMesh out = mesh;
  for (auto& p : out.nodes) p = rotation * p + shift;
  return out;
}

double max_edge_length(const SurfaceMesh& mesh) {
  double h = 0.0;
  for (const auto& elem : mesh.elements) {
    for (int k = 0; k < 3; ++k) {
      const Eigen::Vector3d d =
          mesh.nodes[elem[(k + 1) % 3]] - mesh.nodes[elem[(k + 2) % 3]];
      h = std::max(h, d.norm());
    }
  }
  return h;
}

}  // namespace memfem
