#include "stokes43/patch.hpp"

#include <cmath>

namespace stokes43 {

namespace {

Vec3 edge_bary(int lv, int lw, double s) {
  Vec3 l = Vec3::Zero();
  l[lv] = 1.0 - s;
  l[lw] = s;
  return l;
}

// The six quartics l_V l_W * m for the degree-2 monomials m on one triangle.
std::array<TriPoly, 6> quartic_family(int lv, int lw, int t) {
  const TriPoly lamV = TriPoly::monomial(1, lv == 0 ? 1 : 0, lv == 1 ? 1 : 0, t);
  const TriPoly lamW = TriPoly::monomial(1, lw == 0 ? 1 : 0, lw == 1 ? 1 : 0, t);
  const TriPoly factor = lamV * lamW;
  std::array<TriPoly, 6> out;
  int k = 0;
  for (int a = 2; a >= 0; --a)
    for (int b = 2 - a; b >= 0; --b) out[k++] = factor * TriPoly::monomial(2, a, b, t);
  return out;
}

// Unit normal of edge e pointing from triangle `from` into its neighbor.
Vec2 crossing_normal(const Triangulation& T, const Edge& e, int from) {
  const Vec2 pa = T.nodes[e.a], pb = T.nodes[e.b];
  const Vec2 tv = (pb - pa).normalized();
  Vec2 n(tv.y(), -tv.x());
  const int into = (from == e.t0) ? e.t1 : e.t0;
  const Vec2 mid = 0.5 * (pa + pb);
  if (n.dot(T.triangle(into).centroid() - mid) < 0) n = -n;
  return n;
}

}  // namespace

PairTestFunction patch_test_function(const Triangulation& T, const VertexPatch& patch, int j) {
  if (j < 0 || j >= patch.Jt()) throw InternalError("patch_test_function: edge index out of range");
  const int V = patch.vertex, W0 = patch.far[j];
  const auto [ta, tb] = patch.edge_tris(j);
  const Triangle Ka = T.triangle(ta), Kb = T.triangle(tb);
  const int laV = T.local_index(ta, V), laW = T.local_index(ta, W0);
  const int lbV = T.local_index(tb, V), lbW = T.local_index(tb, W0);
  const Vec2 tvec = patch.tangents[j];
  const double l0 = patch.lens[j];

  const auto wa = quartic_family(laV, laW, ta);
  const auto wb = quartic_family(lbV, lbW, tb);

  Eigen::Matrix<double, 12, 12> A = Eigen::Matrix<double, 12, 12>::Zero();
  Eigen::Matrix<double, 12, 1> rhs = Eigen::Matrix<double, 12, 1>::Zero();

  // Trace continuity of the quadratic factor at three edge parameters pins the
  // whole quartic trace.
  for (int r = 0; r < 3; ++r) {
    const double s = 0.5 * r;
    const Vec3 la = edge_bary(laV, laW, s), lb = edge_bary(lbV, lbW, s);
    int k = 0;
    for (int a = 2; a >= 0; --a)
      for (int b = 2 - a; b >= 0; --b) {
        const TriPoly m = TriPoly::monomial(2, a, b);
        A(r, k) = m(la);
        A(r, 6 + k) = -m(lb);
        ++k;
      }
  }
  // Unit tangential slope at the vertex, zero at the far endpoint.
  for (int i = 0; i < 6; ++i) {
    A(3, i) = tvec.dot(wa[i].gradient(Ka, Vec3::Unit(laV)));
    A(4, i) = tvec.dot(wa[i].gradient(Ka, Vec3::Unit(laW)));
  }
  rhs(3) = 1.0;
  // Zero mean on the shared edge (3-point Gauss, exact for the quartic trace).
  {
    const double gs = std::sqrt(0.15);
    const double node[3] = {0.5 - gs, 0.5, 0.5 + gs};
    const double wt[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    for (int g = 0; g < 3; ++g) {
      const Vec3 la = edge_bary(laV, laW, node[g]);
      for (int i = 0; i < 6; ++i) A(5, i) += l0 * wt[g] * wa[i](la);
    }
  }
  // Zero value and gradient at both gravity centers.
  const Vec3 G(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
  for (int i = 0; i < 6; ++i) {
    A(6, i) = wa[i](G);
    const Vec2 ga = wa[i].gradient(Ka, G);
    A(7, i) = ga.x();
    A(8, i) = ga.y();
    A(9, 6 + i) = wb[i](G);
    const Vec2 gb = wb[i].gradient(Kb, G);
    A(10, 6 + i) = gb.x();
    A(11, 6 + i) = gb.y();
  }

  Eigen::FullPivLU<Eigen::Matrix<double, 12, 12>> lu(A);
  if (!lu.isInvertible()) throw InternalError("patch_test_function: singular constraint system");
  const Eigen::Matrix<double, 12, 1> x = lu.solve(rhs);

  PairTestFunction out;
  out.t0 = ta;
  out.t1 = tb;
  out.w0 = TriPoly::zero(4, ta);
  out.w1 = TriPoly::zero(4, tb);
  for (int i = 0; i < 6; ++i) {
    out.w0 += wa[i] * x[i];
    out.w1 += wb[i] * x[6 + i];
  }
  return out;
}

EdgePairTestFunction edge_pair_test_function(const Triangulation& T, int edge) {
  const Edge& e = T.edges[edge];
  if (e.boundary()) throw InternalError("edge_pair_test_function: boundary edge");
  const double len = (T.nodes[e.b] - T.nodes[e.a]).norm();
  const Vec2 nu = crossing_normal(T, e, e.t0);

  EdgePairTestFunction out;
  out.t0 = e.t0;
  out.t1 = e.t1;
  for (int side = 0; side < 2; ++side) {
    const int t = side ? e.t1 : e.t0;
    const int la = T.local_index(t, e.a), lb = T.local_index(t, e.b);
    const TriPoly prod = TriPoly::monomial(1, la == 0 ? 1 : 0, la == 1 ? 1 : 0, t) *
                         TriPoly::monomial(1, lb == 0 ? 1 : 0, lb == 1 ? 1 : 0, t);
    const TriPoly w = prod * prod * (30.0 / len);
    (side ? out.v1 : out.v0) = VecPoly{w * nu.x(), w * nu.y()};
  }
  return out;
}

double jump_tangential(const Triangulation& T, const VertexPatch& patch, int j, const TriPoly& q0,
                       const TriPoly& q1) {
  const auto [ta, tb] = patch.edge_tris(j);
  const Vec2 tvec = patch.tangents[j];
  const double l = patch.lens[j];
  const Vec3 bar_a = Vec3::Unit(T.local_index(ta, patch.vertex));
  const Vec3 bar_b = Vec3::Unit(T.local_index(tb, patch.vertex));
  const double da = tvec.dot(q0.gradient(T.triangle(ta), bar_a));
  const double db = tvec.dot(q1.gradient(T.triangle(tb), bar_b));
  return l * l * l * (da - db);
}

DeadCornerGeom dead_corner_geometry(const Triangulation& T, int dead_vertex) {
  const auto& fan = T.fans[dead_vertex];
  if (fan.size() != 1) throw InternalError("dead_corner_geometry: vertex has more than one triangle");
  DeadCornerGeom g;
  g.k1 = fan[0];
  const int lv = T.local_index(g.k1, dead_vertex);
  const int eid = T.cell_edges[g.k1][lv];
  const Edge& e = T.edges[eid];
  if (e.boundary()) throw InternalError("dead_corner_geometry: facing edge is on the boundary");
  g.k = (e.t0 == g.k1) ? e.t1 : e.t0;
  g.w1 = std::min(e.a, e.b);
  g.w2 = std::max(e.a, e.b);
  for (int i = 0; i < 3; ++i) {
    const int v = T.cells[g.k][i];
    if (v != e.a && v != e.b) g.w3 = v;
  }
  const double elen = (T.nodes[e.b] - T.nodes[e.a]).norm();
  g.ell = 2.0 * T.triangle(g.k1).area() / elen;
  g.normal = crossing_normal(T, e, g.k1);
  return g;
}

double jump_normal_corner(const Triangulation& T, const DeadCornerGeom& g, const TriPoly& q1,
                          const TriPoly& qk) {
  const Vec3 bar1 = Vec3::Unit(T.local_index(g.k1, g.w1));
  const Vec3 bark = Vec3::Unit(T.local_index(g.k, g.w1));
  const double d1 = g.normal.dot(q1.gradient(T.triangle(g.k1), bar1));
  const double dk = g.normal.dot(qk.gradient(T.triangle(g.k), bark));
  return g.ell * g.ell * g.ell * (d1 - dk);
}

}  // namespace stokes43
