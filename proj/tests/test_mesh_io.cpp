#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "memfem/errors.hpp"
#include "memfem/mesh_io.hpp"
#include "memfem/surface_mesh.hpp"

using namespace memfem;

namespace {

std::string temp_path(const std::string& name) {
  return std::string("mesh_io_") + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("single-triangle OFF file") {
  const std::string path = temp_path("tri.off");
  {
    std::ofstream out(path);
    out << "OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n";
  }
  const SurfaceMesh mesh = read_off(path);
  CHECK(mesh.node_count() == 3);
  CHECK(mesh.element_count() == 1);
  CHECK(mesh.geometry_order == 1);
  int boundary = 0;
  for (bool b : mesh.boundary_node) boundary += b;
  CHECK(boundary == 3);
  std::remove(path.c_str());
}

TEST_CASE("round trip preserves coordinates bit-exactly and connectivity") {
  for (int order : {1, 2}) {
    const SurfaceMesh mesh = generate_cylinder(0.5, 0.6, 3, 7, order);
    const std::string path = temp_path("cyl.off");
    write_off(mesh, path);
    const SurfaceMesh back = read_off(path);
    REQUIRE(back.node_count() == mesh.node_count());
    REQUIRE(back.element_count() == mesh.element_count());
    CHECK(back.geometry_order == order);
    for (int n = 0; n < mesh.node_count(); ++n)
      CHECK(back.nodes[static_cast<std::size_t>(n)] ==
            mesh.nodes[static_cast<std::size_t>(n)]);
    CHECK(back.elements == mesh.elements);
    CHECK(back.boundary_node == mesh.boundary_node);

    // a second write must produce identical bytes
    const std::string path2 = temp_path("cyl2.off");
    write_off(back, path2);
    CHECK(slurp(path) == slurp(path2));
    std::remove(path.c_str());
    std::remove(path2.c_str());
  }
}

TEST_CASE("malformed OFF files raise parse errors with line numbers") {
  const std::string path = temp_path("bad.off");
  {
    std::ofstream out(path);
    out << "OFF\n3 1 0\n0 0 0\n1 0 x\n0 1 0\n3 0 1 2\n";
  }
  CHECK_THROWS_AS(read_off(path), ParseError);
  try {
    read_off(path);
  } catch (const ParseError& err) {
    CHECK(err.line() == 4);
  }
  {
    std::ofstream out(path);
    out << "NOFF\n3 1 0\n";
  }
  CHECK_THROWS_AS(read_off(path), ParseError);
  std::remove(path.c_str());
}

TEST_CASE("non-triangle faces are rejected") {
  const std::string path = temp_path("quad.off");
  {
    std::ofstream out(path);
    out << "OFF\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n";
  }
  CHECK_THROWS_AS(read_off(path), UnsupportedElementError);
  std::remove(path.c_str());
}

TEST_CASE("VTK output satisfies the legacy grammar") {
  const SurfaceMesh mesh = generate_cylinder(0.5, 0.6, 3, 6, 2);
  std::vector<NodalField> fields;
  fields.emplace_back("displacement",
                      std::vector<Eigen::Vector3d>(mesh.nodes.size(),
                                                   Eigen::Vector3d(1, 2, 3)));
  const std::string path = temp_path("out.vtk");
  write_vtk(mesh, fields, path);

  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# vtk DataFile Version 3.0");
  std::getline(in, line);  // title
  std::getline(in, line);
  CHECK(line == "ASCII");
  std::getline(in, line);
  CHECK(line == "DATASET UNSTRUCTURED_GRID");
  std::string word;
  int n = 0;
  in >> word >> n;
  CHECK(word == "POINTS");
  CHECK(n == mesh.node_count());
  for (int i = 0; i < 3 * n; ++i) {
    double v;
    REQUIRE((in >> v));
  }
  int ne = 0, list_len = 0;
  in >> word >> ne >> list_len;
  CHECK(word == "CELLS");
  CHECK(ne == mesh.element_count());
  CHECK(list_len == 7 * ne);
  for (int e = 0; e < ne; ++e) {
    int count;
    REQUIRE((in >> count));
    REQUIRE(count == 6);
    for (int k = 0; k < count; ++k) {
      int idx;
      REQUIRE((in >> idx));
      CHECK(idx >= 0);
      CHECK(idx < mesh.node_count());
    }
  }
  in >> word >> ne;
  CHECK(word == "CELL_TYPES");
  for (int e = 0; e < ne; ++e) {
    int type;
    REQUIRE((in >> type));
    CHECK(type == 22);
  }
  in >> word >> n;
  CHECK(word == "POINT_DATA");
  CHECK(n == mesh.node_count());  // field count = node count
  in >> word;
  CHECK(word == "VECTORS");
  std::remove(path.c_str());
}

TEST_CASE("nodal field size mismatch is rejected") {
  const SurfaceMesh mesh = generate_cylinder(0.5, 0.6, 3, 6, 1);
  std::vector<NodalField> fields;
  fields.emplace_back("displacement", std::vector<Eigen::Vector3d>(2));
  CHECK_THROWS_AS(write_vtk(mesh, fields, temp_path("bad.vtk")), ParameterError);
}
