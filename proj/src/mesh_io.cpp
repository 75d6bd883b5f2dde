#include "memfem/mesh_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "memfem/errors.hpp"

namespace memfem {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct LineReader {
  std::ifstream in;
  int line_number = 0;
  std::string last;

  explicit LineReader(const std::string& path) : in(path) {}

  // Next non-empty, non-comment line. Comment lines starting with '#' are
  // skipped except when `tag` captures them.
  bool next(std::string& out, std::string* tag = nullptr) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_number;
      std::size_t start = line.find_first_not_of(" \t\r\n");
      if (start == std::string::npos) continue;
      if (line[start] == '#') {
        if (tag) *tag = line.substr(start);
        continue;
      }
      out = line;
      return true;
    }
    return false;
  }
};

}  // namespace

SurfaceMesh read_off(const std::string& path) {
  LineReader reader(path);
  if (!reader.in) throw IoError("cannot open mesh file: " + path);

  std::string line;
  if (!reader.next(line)) throw ParseError("empty OFF file", reader.line_number);
  {
    std::istringstream ss(line);
    std::string word;
    ss >> word;
    if (word != "OFF") throw ParseError("missing OFF header", reader.line_number);
  }

  std::string tag;
  if (!reader.next(line, &tag)) throw ParseError("missing count line", reader.line_number);
  int order = 1;
  if (!tag.empty()) {
    std::istringstream ss(tag);
    std::string hash, word;
    ss >> hash >> word;
    if (word == "order") {
      int o = 0;
      if (ss >> o) order = o;
    }
  }
  if (order != 1 && order != 2)
    throw ParseError("unsupported geometry order tag", reader.line_number);

  long nv = 0, nf = 0, ne = 0;
  {
    std::istringstream ss(line);
    if (!(ss >> nv >> nf >> ne) || nv < 0 || nf < 0)
      throw ParseError("malformed count line", reader.line_number);
  }

  SurfaceMesh mesh;
  mesh.geometry_order = order;
  mesh.nodes.reserve(static_cast<std::size_t>(nv));
  for (long i = 0; i < nv; ++i) {
    if (!reader.next(line)) throw ParseError("unexpected end of vertex list", reader.line_number);
    std::istringstream ss(line);
    double x, y, z;
    if (!(ss >> x >> y >> z)) throw ParseError("malformed vertex line", reader.line_number);
    mesh.nodes.emplace_back(x, y, z);
  }

  const int expected = order == 1 ? 3 : 6;
  mesh.elements.reserve(static_cast<std::size_t>(nf));
  for (long f = 0; f < nf; ++f) {
    if (!reader.next(line)) throw ParseError("unexpected end of face list", reader.line_number);
    std::istringstream ss(line);
    int count = 0;
    if (!(ss >> count)) throw ParseError("malformed face line", reader.line_number);
    if (count != expected)
      throw UnsupportedElementError(
          "expected " + std::to_string(expected) + "-node triangle, got " +
              std::to_string(count) + " nodes",
          reader.line_number);
    std::array<int, 6> elem = {-1, -1, -1, -1, -1, -1};
    for (int k = 0; k < count; ++k) {
      if (!(ss >> elem[k])) throw ParseError("malformed face line", reader.line_number);
      if (elem[k] < 0 || elem[k] >= mesh.node_count())
        throw ParseError("face index out of range", reader.line_number);
    }
    mesh.elements.push_back(elem);
  }

  mesh.compute_boundary_flags();
  return mesh;
}

void write_off(const SurfaceMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write mesh file: " + path);
  out << "OFF\n";
  if (mesh.geometry_order == 2) out << "# order 2\n";
  out << mesh.node_count() << ' ' << mesh.element_count() << " 0\n";
  for (const auto& p : mesh.nodes)
    out << format_double(p.x()) << ' ' << format_double(p.y()) << ' '
        << format_double(p.z()) << '\n';
  const int npe = mesh.nodes_per_element();
  for (const auto& elem : mesh.elements) {
    out << npe;
    for (int k = 0; k < npe; ++k) out << ' ' << elem[k];
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

void write_vtk(const SurfaceMesh& mesh, const std::vector<NodalField>& nodal_fields,
               const std::string& path) {
  for (const auto& [name, values] : nodal_fields) {
    if (static_cast<int>(values.size()) != mesh.node_count())
      throw ParameterError("nodal field '" + name + "' size mismatch");
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write VTK file: " + path);
  out << "# vtk DataFile Version 3.0\n";
  out << "memfem surface output\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.node_count() << " double\n";
  for (const auto& p : mesh.nodes)
    out << format_double(p.x()) << ' ' << format_double(p.y()) << ' '
        << format_double(p.z()) << '\n';

  const int npe = mesh.nodes_per_element();
  out << "CELLS " << mesh.element_count() << ' '
      << mesh.element_count() * (npe + 1) << '\n';
  for (const auto& elem : mesh.elements) {
    out << npe;
    if (npe == 3) {
      for (int k = 0; k < 3; ++k) out << ' ' << elem[k];
    } else {
      // VTK quadratic triangles order midside nodes as mid(0,1), mid(1,2),
      // mid(2,0); ours sit opposite their vertex.
      out << ' ' << elem[0] << ' ' << elem[1] << ' ' << elem[2] << ' ' << elem[5]
          << ' ' << elem[3] << ' ' << elem[4];
    }
    out << '\n';
  }
  out << "CELL_TYPES " << mesh.element_count() << '\n';
  for (int e = 0; e < mesh.element_count(); ++e) out << (npe == 3 ? 5 : 22) << '\n';

  if (!nodal_fields.empty()) {
    out << "POINT_DATA " << mesh.node_count() << '\n';
    for (const auto& [name, values] : nodal_fields) {
      out << "VECTORS " << name << " double\n";
      for (const auto& v : values)
        out << format_double(v.x()) << ' ' << format_double(v.y()) << ' '
            << format_double(v.z()) << '\n';
    }
  }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace memfem
