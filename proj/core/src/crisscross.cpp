#include "stokes43/mesh.hpp"

namespace stokes43 {

Triangulation generate_crisscross(int n, bool singular_corners) {
  if (n < 2) throw MeshError("generate_crisscross: n must be >= 2");
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> cells;
  const double dx = 1.0 / n;
  auto grid = [&](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) nodes.push_back(Vec2(i * dx, j * dx));

  auto is_corner_cell = [&](int i, int j) {
    return (i == 0 || i == n - 1) && (j == 0 || j == n - 1);
  };

  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      // ccw cell corners starting bottom-left
      const std::array<int, 4> c = {grid(i, j), grid(i + 1, j), grid(i + 1, j + 1),
                                    grid(i, j + 1)};
      if (singular_corners && is_corner_cell(i, j)) {
        // Which cell corner is the domain corner?
        const int ci = (i == 0) ? 0 : 1, cj = (j == 0) ? 0 : 1;
        int k = 0;
        if (ci == 1 && cj == 0) k = 1;
        else if (ci == 1 && cj == 1) k = 2;
        else if (ci == 0 && cj == 1) k = 3;
        const int ck = c[k], cprev = c[(k + 3) % 4], cnext = c[(k + 1) % 4],
                  copp = c[(k + 2) % 4];
        // A small anti-diagonal cut at half step isolates the domain corner in
        // one dead triangle; the remaining pentagon is fanned from the far
        // cell corner.  Keeps 4 triangles in the cell.
        const int p = static_cast<int>(nodes.size());
        nodes.push_back(0.5 * (nodes[ck] + nodes[cnext]));
        const int q = static_cast<int>(nodes.size());
        nodes.push_back(0.5 * (nodes[ck] + nodes[cprev]));
        cells.push_back({ck, p, q});
        cells.push_back({copp, p, cnext});
        cells.push_back({copp, q, p});
        cells.push_back({copp, cprev, q});
      } else {
        const int m = static_cast<int>(nodes.size());
        nodes.push_back(Vec2((i + 0.5) * dx, (j + 0.5) * dx));
        for (int k = 0; k < 4; ++k) cells.push_back({c[k], c[(k + 1) % 4], m});
      }
    }

  return build_triangulation(std::move(nodes), std::move(cells));
}

}  // namespace stokes43
