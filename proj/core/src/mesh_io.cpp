#include "stokes43/mesh_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

namespace stokes43 {

Triangulation read_mesh(std::istream& in) {
  int nv = 0, nt = 0;
  if (!(in >> nv >> nt) || nv <= 0 || nt <= 0) throw MeshError("read_mesh: bad header");
  std::vector<Vec2> nodes(nv);
  for (int i = 0; i < nv; ++i)
    if (!(in >> nodes[i].x() >> nodes[i].y())) throw MeshError("read_mesh: bad node line");
  std::vector<std::array<int, 3>> cells(nt);
  for (int t = 0; t < nt; ++t)
    if (!(in >> cells[t][0] >> cells[t][1] >> cells[t][2]))
      throw MeshError("read_mesh: bad cell line");
  return build_triangulation(std::move(nodes), std::move(cells));
}

Triangulation read_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("read_mesh: cannot open " + path);
  return read_mesh(in);
}

void write_mesh(std::ostream& out, const Triangulation& T) {
  out << T.n_vertices() << ' ' << T.n_triangles() << '\n';
  char buf[64];
  for (const Vec2& p : T.nodes) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x(), p.y());
    out << buf;
  }
  for (const auto& c : T.cells) out << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
}

void write_mesh_file(const std::string& path, const Triangulation& T) {
  std::ofstream out(path);
  if (!out) throw MeshError("write_mesh: cannot open " + path);
  write_mesh(out, T);
}

}  // namespace stokes43
