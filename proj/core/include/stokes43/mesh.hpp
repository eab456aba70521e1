#pragma once

#include "stokes43/tripoly.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace stokes43 {

struct MeshError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a mesh-level consistency guarantee fails (rank defects, cycle
/// audits, cross-checks of closed forms).  Distinct from user input errors.
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when the mesh violates an admissibility assumption the recovery
/// needs (e.g. a triangle touching two domain corners).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Edge {
  int a = -1, b = -1;    // endpoint vertices, a < b
  int t0 = -1, t1 = -1;  // incident triangles; t1 = -1 on the boundary

  bool boundary() const { return t1 < 0; }
};

class Triangulation {
 public:
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> cells;  // counterclockwise vertex triples
  std::vector<Edge> edges;
  std::vector<std::array<int, 3>> cell_edges;  // cell_edges[t][i] = edge opposite local vertex i
  std::vector<char> boundary_vertex;
  std::vector<char> corner_vertex;
  std::vector<std::vector<int>> fans;  // per vertex, incident triangles in ccw order
  double h = 0;                        // max triangle diameter

  int n_vertices() const { return static_cast<int>(nodes.size()); }
  int n_triangles() const { return static_cast<int>(cells.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }
  int n_interior_edges() const;
  int n_boundary_vertices() const;
  int n_interior_vertices() const;
  int n_corners() const;

  Triangle triangle(int t) const {
    return Triangle{{nodes[cells[t][0]], nodes[cells[t][1]], nodes[cells[t][2]]}};
  }
  /// Local index (0..2) of global vertex v within triangle t.
  int local_index(int t, int v) const;
  bool has_vertex(int t, int v) const;
  /// Edge index between two triangles, -1 if not adjacent.
  int shared_edge(int t0, int t1) const;
  /// The triangle adjacent to t across the edge opposite local vertex lv, -1 on boundary.
  int neighbor(int t, int lv) const;
  /// Smallest interior angle over all triangles.
  double min_angle() const;
};

/// Ordered data for the triangle fan around one vertex.
struct VertexPatch {
  int vertex = -1;
  bool interior = false;
  std::vector<int> fan;        // K_1..K_J, ccw; for boundary vertices starts at a boundary edge
  std::vector<double> angles;  // angle of fan[j] at the vertex
  std::vector<int> far;        // far endpoint of interior edge j (between fan[j], fan[j+1])
  std::vector<Vec2> tangents;  // unit tangent along interior edge j, from vertex outwards
  std::vector<double> lens;    // length of interior edge j
  // Boundary-only data: the first and last outer fan vertices and the
  // lengths of the two boundary edges through the vertex.
  int first_boundary_far = -1, last_boundary_far = -1;
  double first_boundary_len = 0, last_boundary_len = 0;

  int J() const { return static_cast<int>(fan.size()); }
  int Jt() const { return static_cast<int>(far.size()); }  // interior edge count
  std::pair<int, int> edge_tris(int j) const { return {fan[j], fan[(j + 1) % J()]}; }
  /// Lengths of the two vertex edges of fan[j]: (previous, next) in ccw order.
  std::pair<double, double> tri_edge_lens(int j) const;
};

enum class VertexClass { Regular, NearlySingular, DeadCorner };

struct VertexClassification {
  VertexClass cls = VertexClass::Regular;
  std::vector<double> upsilon;  // sorted pairwise angle sums
  double theta = 0;             // threshold used
};

struct ValidationReport {
  std::vector<int> triangles_with_two_corners;        // violates the corner assumption
  std::vector<std::pair<int, int>> singular_pair_edges;  // interior edges joining two
                                                         // nearly singular vertices
  bool admissible() const { return triangles_with_two_corners.empty(); }
  bool consistent() const { return singular_pair_edges.empty(); }
};

Triangulation build_triangulation(std::vector<Vec2> nodes, std::vector<std::array<int, 3>> cells);

VertexPatch vertex_patch(const Triangulation& T, int v);

/// Pairwise angle sums over consecutive fan triangles sharing an edge through v.
std::vector<double> upsilon(const Triangulation& T, int v);

std::vector<VertexClassification> classify_vertices(const Triangulation& T, double theta);

ValidationReport validate(const Triangulation& T, const std::vector<VertexClassification>& classes);

/// Crisscross mesh of the unit square with n x n cells, 4 triangles per cell.
/// With singular_corners each of the four corner cells is cut at half step
/// parallel to its anti-diagonal, isolating the domain corner in a single
/// small triangle (a dead corner); the remaining pentagon is fanned from the
/// far cell corner.
Triangulation generate_crisscross(int n, bool singular_corners);

}  // namespace stokes43
