#include "stokes43/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

namespace stokes43 {

int Triangulation::n_interior_edges() const {
  int n = 0;
  for (const Edge& e : edges)
    if (!e.boundary()) ++n;
  return n;
}

int Triangulation::n_boundary_vertices() const {
  return static_cast<int>(std::count(boundary_vertex.begin(), boundary_vertex.end(), 1));
}

int Triangulation::n_interior_vertices() const { return n_vertices() - n_boundary_vertices(); }

int Triangulation::n_corners() const {
  return static_cast<int>(std::count(corner_vertex.begin(), corner_vertex.end(), 1));
}

int Triangulation::local_index(int t, int v) const {
  for (int i = 0; i < 3; ++i)
    if (cells[t][i] == v) return i;
  throw std::out_of_range("local_index: vertex not in triangle");
}

bool Triangulation::has_vertex(int t, int v) const {
  return cells[t][0] == v || cells[t][1] == v || cells[t][2] == v;
}

int Triangulation::shared_edge(int t0, int t1) const {
  for (int e : cell_edges[t0]) {
    if ((edges[e].t0 == t0 && edges[e].t1 == t1) || (edges[e].t0 == t1 && edges[e].t1 == t0))
      return e;
  }
  return -1;
}

int Triangulation::neighbor(int t, int lv) const {
  const Edge& e = edges[cell_edges[t][lv]];
  return e.t0 == t ? e.t1 : e.t0;
}

double Triangulation::min_angle() const {
  double m = M_PI;
  for (int t = 0; t < n_triangles(); ++t) m = std::min(m, triangle(t).min_angle());
  return m;
}

Triangulation build_triangulation(std::vector<Vec2> nodes, std::vector<std::array<int, 3>> cells) {
  if (cells.empty()) throw MeshError("build_triangulation: no cells");
  const int nv = static_cast<int>(nodes.size());
  for (const auto& c : cells)
    for (int v : c)
      if (v < 0 || v >= nv) throw MeshError("build_triangulation: vertex index out of range");

  // Duplicate node check, tolerance relative to the bounding box diameter.
  Vec2 lo = nodes[0], hi = nodes[0];
  for (const Vec2& p : nodes) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double bbox = (hi - lo).norm();
  const double node_tol = 1e-12 * std::max(bbox, 1e-300);
  {
    std::vector<int> order(nodes.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return nodes[a].x() < nodes[b].x(); });
    for (size_t i = 0; i < order.size(); ++i)
      for (size_t j = i + 1; j < order.size(); ++j) {
        if (nodes[order[j]].x() - nodes[order[i]].x() > node_tol) break;
        if ((nodes[order[j]] - nodes[order[i]]).norm() <= node_tol)
          throw MeshError("build_triangulation: coincident nodes");
      }
  }

  Triangulation T;
  T.nodes = std::move(nodes);
  T.cells = std::move(cells);

  // Orient counterclockwise; reject degenerate triangles.
  for (auto& c : T.cells) {
    Triangle tri{{T.nodes[c[0]], T.nodes[c[1]], T.nodes[c[2]]}};
    const double a = tri.area();
    const double d = tri.diameter();
    if (std::abs(a) <= 1e-14 * d * d) throw MeshError("build_triangulation: zero-area triangle");
    if (a < 0) std::swap(c[1], c[2]);
  }

  // Edge table.
  std::map<std::pair<int, int>, int> edge_of;
  T.cell_edges.assign(T.cells.size(), {-1, -1, -1});
  for (int t = 0; t < T.n_triangles(); ++t) {
    for (int i = 0; i < 3; ++i) {
      int a = T.cells[t][(i + 1) % 3], b = T.cells[t][(i + 2) % 3];
      if (a > b) std::swap(a, b);
      auto [it, inserted] = edge_of.try_emplace({a, b}, T.n_edges());
      if (inserted) T.edges.push_back(Edge{a, b, t, -1});
      else {
        Edge& e = T.edges[it->second];
        if (!e.boundary()) throw MeshError("build_triangulation: non-manifold edge");
        e.t1 = t;
      }
      T.cell_edges[t][i] = it->second;
    }
  }

  // Dual-graph connectivity.
  {
    std::vector<char> seen(T.n_triangles(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
      const int t = q.front();
      q.pop();
      for (int lv = 0; lv < 3; ++lv) {
        const int nb = T.neighbor(t, lv);
        if (nb >= 0 && !seen[nb]) {
          seen[nb] = 1;
          ++count;
          q.push(nb);
        }
      }
    }
    if (count != T.n_triangles())
      throw MeshError("build_triangulation: disconnected dual graph");
  }

  // Boundary and corner flags.
  T.boundary_vertex.assign(T.n_vertices(), 0);
  std::vector<std::vector<int>> bdy_edges_at(T.n_vertices());
  for (int e = 0; e < T.n_edges(); ++e) {
    if (T.edges[e].boundary()) {
      T.boundary_vertex[T.edges[e].a] = 1;
      T.boundary_vertex[T.edges[e].b] = 1;
      bdy_edges_at[T.edges[e].a].push_back(e);
      bdy_edges_at[T.edges[e].b].push_back(e);
    }
  }
  T.corner_vertex.assign(T.n_vertices(), 0);
  for (int v = 0; v < T.n_vertices(); ++v) {
    if (!T.boundary_vertex[v]) continue;
    if (bdy_edges_at[v].size() != 2)
      throw MeshError("build_triangulation: boundary vertex without exactly two boundary edges");
    auto tangent = [&](int e) {
      const int other = (T.edges[e].a == v) ? T.edges[e].b : T.edges[e].a;
      return Vec2((T.nodes[other] - T.nodes[v]).normalized());
    };
    const Vec2 t0 = tangent(bdy_edges_at[v][0]);
    const Vec2 t1 = tangent(bdy_edges_at[v][1]);
    if (std::abs(t0.x() * t1.y() - t0.y() * t1.x()) > 1e-9) T.corner_vertex[v] = 1;
  }

  // Vertex fans, ccw ordered; boundary fans start at a boundary edge.
  T.fans.assign(T.n_vertices(), {});
  std::vector<std::vector<int>> incident(T.n_vertices());
  for (int t = 0; t < T.n_triangles(); ++t)
    for (int v : T.cells[t]) incident[v].push_back(t);
  for (int v = 0; v < T.n_vertices(); ++v) {
    const auto& inc = incident[v];
    if (inc.empty()) throw MeshError("build_triangulation: isolated vertex");
    // Walking ccw around v from triangle (v, a, b) crosses the edge (v, b).
    std::map<int, int> by_entry;  // a-vertex -> triangle
    std::map<int, int> exit_of;   // triangle -> b-vertex
    for (int t : inc) {
      const int i = T.local_index(t, v);
      by_entry[T.cells[t][(i + 1) % 3]] = t;
      exit_of[t] = T.cells[t][(i + 2) % 3];
    }
    int start = inc[0];
    if (T.boundary_vertex[v]) {
      for (auto [a, t] : by_entry) {
        bool has_prev = false;
        for (int u : inc)
          if (exit_of[u] == a) has_prev = true;
        if (!has_prev) {
          start = t;
          break;
        }
      }
    } else {
      start = *std::min_element(inc.begin(), inc.end());
    }
    int t = start;
    for (size_t k = 0; k < inc.size(); ++k) {
      T.fans[v].push_back(t);
      auto it = by_entry.find(exit_of[t]);
      if (it == by_entry.end()) break;
      t = it->second;
      if (t == start) break;
    }
    if (T.fans[v].size() != inc.size())
      throw MeshError("build_triangulation: non-manifold vertex fan");
  }

  T.h = 0;
  for (int t = 0; t < T.n_triangles(); ++t) T.h = std::max(T.h, T.triangle(t).diameter());
  return T;
}

VertexPatch vertex_patch(const Triangulation& T, int v) {
  VertexPatch P;
  P.vertex = v;
  P.interior = !T.boundary_vertex[v];
  P.fan = T.fans[v];
  const int J = P.J();
  for (int j = 0; j < J; ++j) {
    const int t = P.fan[j];
    const int i = T.local_index(t, v);
    const Vec2 a = T.nodes[T.cells[t][(i + 1) % 3]] - T.nodes[v];
    const Vec2 b = T.nodes[T.cells[t][(i + 2) % 3]] - T.nodes[v];
    P.angles.push_back(std::acos(std::clamp(a.dot(b) / (a.norm() * b.norm()), -1.0, 1.0)));
  }
  const int Jt = P.interior ? J : J - 1;
  for (int j = 0; j < Jt; ++j) {
    const int t = P.fan[j];
    const int i = T.local_index(t, v);
    const int far = T.cells[t][(i + 2) % 3];  // shared with fan[j+1]
    P.far.push_back(far);
    const Vec2 d = T.nodes[far] - T.nodes[v];
    P.lens.push_back(d.norm());
    P.tangents.push_back(d.normalized());
  }
  if (!P.interior) {
    const int t0 = P.fan.front(), i0 = T.local_index(t0, v);
    P.first_boundary_far = T.cells[t0][(i0 + 1) % 3];
    P.first_boundary_len = (T.nodes[P.first_boundary_far] - T.nodes[v]).norm();
    const int tJ = P.fan.back(), iJ = T.local_index(tJ, v);
    P.last_boundary_far = T.cells[tJ][(iJ + 2) % 3];
    P.last_boundary_len = (T.nodes[P.last_boundary_far] - T.nodes[v]).norm();
  }
  return P;
}

std::pair<double, double> VertexPatch::tri_edge_lens(int j) const {
  double prev, next;
  if (interior) {
    prev = lens[(j + J() - 1) % J()];
    next = lens[j];
  } else {
    prev = (j == 0) ? first_boundary_len : lens[j - 1];
    next = (j == J() - 1) ? last_boundary_len : lens[j];
  }
  return {prev, next};
}

std::vector<double> upsilon(const Triangulation& T, int v) {
  const VertexPatch P = vertex_patch(T, v);
  std::vector<double> sums;
  const int J = P.J();
  if (P.Jt() == 0) return sums;
  for (int j = 0; j < P.Jt(); ++j) sums.push_back(P.angles[j] + P.angles[(j + 1) % J]);
  std::sort(sums.begin(), sums.end());
  return sums;
}

std::vector<VertexClassification> classify_vertices(const Triangulation& T, double theta) {
  if (!(theta > 0) || theta > T.min_angle() + 1e-12)
    throw std::invalid_argument("classify_vertices: theta outside (0, min angle]");
  std::vector<VertexClassification> out(T.n_vertices());
  for (int v = 0; v < T.n_vertices(); ++v) {
    VertexClassification& c = out[v];
    c.theta = theta;
    c.upsilon = upsilon(T, v);
    if (c.upsilon.empty()) {
      c.cls = VertexClass::DeadCorner;
      continue;
    }
    const bool nearly = std::all_of(c.upsilon.begin(), c.upsilon.end(),
                                    [&](double s) { return std::abs(s - M_PI) < theta; });
    c.cls = nearly ? VertexClass::NearlySingular : VertexClass::Regular;
  }
  return out;
}

ValidationReport validate(const Triangulation& T,
                          const std::vector<VertexClassification>& classes) {
  ValidationReport report;
  for (int t = 0; t < T.n_triangles(); ++t) {
    int corners = 0;
    for (int v : T.cells[t]) corners += T.corner_vertex[v];
    if (corners >= 2) report.triangles_with_two_corners.push_back(t);
  }
  for (const Edge& e : T.edges) {
    if (e.boundary()) continue;
    if (classes[e.a].cls == VertexClass::NearlySingular &&
        classes[e.b].cls == VertexClass::NearlySingular)
      report.singular_pair_edges.emplace_back(e.a, e.b);
  }
  return report;
}

}  // namespace stokes43
