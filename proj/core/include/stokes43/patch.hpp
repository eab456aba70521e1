#pragma once

#include "stokes43/mesh.hpp"
#include "stokes43/tripoly.hpp"

namespace stokes43 {

/// Piecewise quartic scalar w supported on the two fan triangles across
/// interior edge j of a vertex patch: unit tangential slope at the vertex, zero
/// slope at the far endpoint, zero mean on the shared edge, zero value and
/// gradient at both gravity centers, zero trace on the patch boundary.
struct PairTestFunction {
  int t0 = -1, t1 = -1;  // fan[j], fan[j+1]
  TriPoly w0, w1;        // degree 4
};

PairTestFunction patch_test_function(const Triangulation& T, const VertexPatch& patch, int j);

/// Vector quartic on the two triangles of an interior edge with divergence
/// integrals (+1, -1) and gradient vanishing at all patch vertices:
/// v = (30/|E|) (la lb)^2 nu_E.
struct EdgePairTestFunction {
  int t0 = -1, t1 = -1;
  VecPoly v0, v1;
};

EdgePairTestFunction edge_pair_test_function(const Triangulation& T, int edge);

/// |E|^3 (d/dt q0(V) - d/dt q1(V)) across interior edge j of the patch.
double jump_tangential(const Triangulation& T, const VertexPatch& patch, int j, const TriPoly& q0,
                       const TriPoly& q1);

/// Geometry around a dead corner: its single triangle, the triangle across the
/// opposite edge, and the jump data at the shared edge.
struct DeadCornerGeom {
  int k1 = -1, k = -1;       // the dead corner's triangle and its neighbor
  int w1 = -1, w2 = -1, w3 = -1;  // shared edge endpoints (w1 < w2) and far vertex of k
  double ell = 0;            // distance from the dead corner to the shared edge
  Vec2 normal;               // outward unit normal of k1 on the shared edge
};

DeadCornerGeom dead_corner_geometry(const Triangulation& T, int dead_vertex);

/// ell^3 (d/dn q1(W1) - d/dn qk(W1)) across the edge facing the dead corner.
double jump_normal_corner(const Triangulation& T, const DeadCornerGeom& g, const TriPoly& q1,
                          const TriPoly& qk);

}  // namespace stokes43
