#include "stokes43/argyris.hpp"

#include <cmath>

namespace stokes43 {

namespace {

// Monomials X^a Y^b with a+b <= 5, ordered by total degree then a descending.
struct Mono {
  int a, b;
};

const std::array<Mono, 21>& monomials() {
  static const std::array<Mono, 21> m = [] {
    std::array<Mono, 21> out;
    int k = 0;
    for (int d = 0; d <= 5; ++d)
      for (int a = d; a >= 0; --a) out[k++] = {a, d - a};
    return out;
  }();
  return m;
}

double mono_val(const Mono& m, const Vec2& p) {
  return std::pow(p.x(), m.a) * std::pow(p.y(), m.b);
}
double mono_dx(const Mono& m, const Vec2& p) {
  return m.a ? m.a * std::pow(p.x(), m.a - 1) * std::pow(p.y(), m.b) : 0.0;
}
double mono_dy(const Mono& m, const Vec2& p) {
  return m.b ? m.b * std::pow(p.x(), m.a) * std::pow(p.y(), m.b - 1) : 0.0;
}
double mono_dxx(const Mono& m, const Vec2& p) {
  return m.a > 1 ? m.a * (m.a - 1) * std::pow(p.x(), m.a - 2) * std::pow(p.y(), m.b) : 0.0;
}
double mono_dxy(const Mono& m, const Vec2& p) {
  return (m.a && m.b) ? m.a * m.b * std::pow(p.x(), m.a - 1) * std::pow(p.y(), m.b - 1) : 0.0;
}
double mono_dyy(const Mono& m, const Vec2& p) {
  return m.b > 1 ? m.b * (m.b - 1) * std::pow(p.x(), m.a) * std::pow(p.y(), m.b - 2) : 0.0;
}

}  // namespace

ArgyrisLocal local_nodal_basis(const Triangle& K) {
  const Vec2 c = K.centroid();
  const double hK = K.diameter();
  const auto& mono = monomials();

  // Local coordinates of the vertices and edge midpoints.
  std::array<Vec2, 3> lv;
  for (int i = 0; i < 3; ++i) lv[i] = (K.v[i] - c) / hK;
  std::array<Vec2, 3> lmid;
  std::array<Vec2, 3> normal;  // outward unit normals in physical frame
  for (int e = 0; e < 3; ++e) {
    const Vec2 p = K.v[(e + 1) % 3], q = K.v[(e + 2) % 3];
    lmid[e] = (0.5 * (p + q) - c) / hK;
    const Vec2 t = (q - p).normalized();
    normal[e] = Vec2(t.y(), -t.x());  // outward for ccw triangles
  }

  // Physical DOF functionals applied to the scaled local monomials.
  Eigen::Matrix<double, 21, 21> M;
  for (int j = 0; j < 21; ++j) {
    const Mono& m = mono[j];
    for (int i = 0; i < 3; ++i) {
      M(6 * i + 0, j) = mono_val(m, lv[i]);
      M(6 * i + 1, j) = mono_dx(m, lv[i]) / hK;
      M(6 * i + 2, j) = mono_dy(m, lv[i]) / hK;
      M(6 * i + 3, j) = mono_dxx(m, lv[i]) / (hK * hK);
      M(6 * i + 4, j) = mono_dxy(m, lv[i]) / (hK * hK);
      M(6 * i + 5, j) = mono_dyy(m, lv[i]) / (hK * hK);
    }
    for (int e = 0; e < 3; ++e) {
      M(18 + e, j) =
          (normal[e].x() * mono_dx(m, lmid[e]) + normal[e].y() * mono_dy(m, lmid[e])) / hK;
    }
  }

  Eigen::FullPivLU<Eigen::Matrix<double, 21, 21>> lu(M);
  if (!lu.isInvertible())
    throw InternalError("local_nodal_basis: ill-conditioned Vandermonde, min angle " +
                        std::to_string(K.min_angle()));
  const Eigen::Matrix<double, 21, 21> C = lu.inverse();  // column i = coeffs of basis_i

  // Barycentric representation of the local monomials.
  Eigen::Vector3d Xv, Yv;
  for (int i = 0; i < 3; ++i) {
    Xv[i] = lv[i].x();
    Yv[i] = lv[i].y();
  }
  const TriPoly X = TriPoly::linear(Xv), Y = TriPoly::linear(Yv);
  std::array<TriPoly, 21> bary_mono;
  for (int j = 0; j < 21; ++j) {
    TriPoly p = TriPoly::constant(0, 1.0);
    for (int k = 0; k < mono[j].a; ++k) p = p * X;
    for (int k = 0; k < mono[j].b; ++k) p = p * Y;
    bary_mono[j] = p.promoted(5);
  }

  ArgyrisLocal out;
  for (int i = 0; i < 21; ++i) {
    Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(poly_dim(5));
    for (int j = 0; j < 21; ++j) coeffs += C(j, i) * bary_mono[j].coeffs();
    out.basis[i] = TriPoly(5, std::move(coeffs));
  }
  return out;
}

Eigen::Matrix<double, kArgyrisLocalDofs, 1> ArgyrisDofMap::local_coeffs(
    int t, const Eigen::VectorXd& x) const {
  Eigen::Matrix<double, kArgyrisLocalDofs, 1> c = Eigen::Matrix<double, 21, 1>::Zero();
  for (int l = 0; l < kArgyrisLocalDofs; ++l)
    for (const DofTerm& term : incidence[t][l]) c[l] += term.coeff * x[term.index];
  return c;
}

ArgyrisDofMap build_dof_map(const Triangulation& T) {
  ArgyrisDofMap map;

  // Global numbering: vertex DOFs first, then interior edge DOFs.
  std::vector<std::array<int, 6>> vdof(T.n_vertices(), {-1, -1, -1, -1, -1, -1});
  std::vector<Vec2> vnormal(T.n_vertices(), Vec2::Zero());

  // Mean incident edge length per vertex, for the DOF length scales.
  std::vector<double> vlen(T.n_vertices(), 0.0);
  std::vector<int> vcnt(T.n_vertices(), 0);
  for (const Edge& e : T.edges) {
    const double l = (T.nodes[e.b] - T.nodes[e.a]).norm();
    vlen[e.a] += l;
    vlen[e.b] += l;
    ++vcnt[e.a];
    ++vcnt[e.b];
  }
  for (int v = 0; v < T.n_vertices(); ++v) vlen[v] /= vcnt[v];

  auto push = [&](DofKind kind, int entity, double scale) {
    map.kinds.push_back(kind);
    map.entity.push_back(entity);
    map.scale.push_back(scale);
    return map.n_free++;
  };

  // Boundary tangents for the rotated Hessian frame at non-corner boundary
  // vertices (the two boundary edges are colinear there).
  for (const Edge& e : T.edges) {
    if (!e.boundary()) continue;
    const Vec2 t = (T.nodes[e.b] - T.nodes[e.a]).normalized();
    const Vec2 n(-t.y(), t.x());
    vnormal[e.a] = n;
    vnormal[e.b] = n;
  }

  for (int v = 0; v < T.n_vertices(); ++v) {
    const double l = vlen[v];
    if (!T.boundary_vertex[v]) {
      static const DofKind cart[6] = {DofKind::VertexValue, DofKind::VertexDx, DofKind::VertexDy,
                                      DofKind::VertexDxx,   DofKind::VertexDxy, DofKind::VertexDyy};
      const double s[6] = {1.0, l, l, l * l, l * l, l * l};
      for (int k = 0; k < 6; ++k) vdof[v][k] = push(cart[k], v, s[k]);
    } else if (!T.corner_vertex[v]) {
      vdof[v][3] = push(DofKind::VertexDnn, v, l * l);  // single free DOF, slot reused
    }
  }
  std::vector<int> edof(T.n_edges(), -1);
  for (int e = 0; e < T.n_edges(); ++e)
    if (!T.edges[e].boundary())
      edof[e] = push(DofKind::EdgeNormal, e,
                     (T.nodes[T.edges[e].b] - T.nodes[T.edges[e].a]).norm());

  map.incidence.resize(T.n_triangles());
  for (int t = 0; t < T.n_triangles(); ++t) {
    for (int i = 0; i < 3; ++i) {
      const int v = T.cells[t][i];
      auto& loc = map.incidence[t];
      if (!T.boundary_vertex[v]) {
        for (int k = 0; k < 6; ++k)
          loc[6 * i + k].push_back({vdof[v][k], map.scale[vdof[v][k]]});
      } else if (!T.corner_vertex[v]) {
        // Only d_nn survives; the Cartesian Hessian is n (x) n * d_nn.
        const Vec2 n = vnormal[v];
        const int g = vdof[v][3];
        const double s = map.scale[g];
        loc[6 * i + 3].push_back({g, s * n.x() * n.x()});
        loc[6 * i + 4].push_back({g, s * n.x() * n.y()});
        loc[6 * i + 5].push_back({g, s * n.y() * n.y()});
      }
      // corners: fully constrained
    }
    for (int le = 0; le < 3; ++le) {
      const int e = T.cell_edges[t][le];
      if (edof[e] < 0) continue;
      // The global DOF uses the outward normal of the lower-indexed triangle.
      const int owner = std::min(T.edges[e].t0, T.edges[e].t1);
      map.incidence[t][18 + le].push_back(
          {edof[e], (t == owner ? 1.0 : -1.0) * map.scale[edof[e]]});
    }
  }
  return map;
}

TriPoly StreamField::local_quintic(int t) const {
  return local_quintic(t, local_nodal_basis(mesh->triangle(t)));
}

TriPoly StreamField::local_quintic(int t, const ArgyrisLocal& basis) const {
  const auto c = dofmap->local_coeffs(t, coeffs);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(poly_dim(5));
  for (int l = 0; l < kArgyrisLocalDofs; ++l)
    if (c[l] != 0.0) out += c[l] * basis.basis[l].coeffs();
  return TriPoly(5, std::move(out), t);
}

VecPoly curl_field(const Triangle& K, const TriPoly& quintic) {
  return VecPoly{quintic.derivative(K, 1), quintic.derivative(K, 0) * -1.0};
}

VecPoly curl_field(const StreamField& s, int t) {
  return curl_field(s.mesh->triangle(t), s.local_quintic(t));
}

}  // namespace stokes43
