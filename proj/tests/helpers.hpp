#pragma once

#include "stokes43/harness.hpp"
#include "stokes43/quadrature.hpp"

#include <cmath>
#include <memory>
#include <random>

// Shared fixtures: deterministic randomness, random geometry, and exact
// global-polynomial construction on triangles.
namespace testutil {

using namespace stokes43;

inline std::mt19937& rng() {
  static std::mt19937 gen(9137501u);
  return gen;
}

inline double urand(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline Eigen::VectorXd random_vector(int n, double amp = 1.0) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = urand(-amp, amp);
  return v;
}

/// Counterclockwise triangle with unit-scale edges and a bounded-away-from-zero
/// minimum angle.
inline Triangle random_triangle() {
  for (;;) {
    Triangle K{{Vec2(urand(-1, 1), urand(-1, 1)), Vec2(urand(-1, 1), urand(-1, 1)),
                Vec2(urand(-1, 1), urand(-1, 1))}};
    if (K.area() < 0) std::swap(K.v[1], K.v[2]);
    if (K.area() > 0.08 && K.min_angle() > 0.35) return K;
  }
}

inline TriPoly random_poly(int degree, int tri = -1) {
  return TriPoly(degree, random_vector(poly_dim(degree)), tri);
}

/// A cubic in global (x, y) coordinates; restriction to any triangle is built
/// exactly from products of the linear barycentric representations of x and y.
struct GlobalCubic {
  // Coefficients of 1, x, y, x^2, xy, y^2, x^3, x^2 y, x y^2, y^3.
  std::array<double, 10> c{};

  double value(const Vec2& p) const {
    const double x = p.x(), y = p.y();
    return c[0] + c[1] * x + c[2] * y + c[3] * x * x + c[4] * x * y + c[5] * y * y +
           c[6] * x * x * x + c[7] * x * x * y + c[8] * x * y * y + c[9] * y * y * y;
  }

  TriPoly on(const Triangle& K, int tri = -1) const {
    Vec3 xv, yv;
    for (int i = 0; i < 3; ++i) {
      xv[i] = K.v[i].x();
      yv[i] = K.v[i].y();
    }
    const TriPoly X = TriPoly::linear(xv, tri), Y = TriPoly::linear(yv, tri);
    const TriPoly X2 = X * X, Y2 = Y * Y, XY = X * Y;
    TriPoly out = TriPoly::constant(3, c[0], tri);
    out += (X * c[1]).promoted(3);
    out += (Y * c[2]).promoted(3);
    out += (X2 * c[3]).promoted(3);
    out += (XY * c[4]).promoted(3);
    out += (Y2 * c[5]).promoted(3);
    out += X2 * X * c[6];
    out += X2 * Y * c[7];
    out += X * Y2 * c[8];
    out += Y2 * Y * c[9];
    out.set_tri(tri);
    return out;
  }
};

inline GlobalCubic random_global_cubic() {
  GlobalCubic g;
  for (double& v : g.c) v = urand(-1, 1);
  return g;
}

/// Shift the constant term so the mesh integral vanishes.
inline GlobalCubic zero_mean_on(GlobalCubic g, const Triangulation& T) {
  double sum = 0, area = 0;
  for (int t = 0; t < T.n_triangles(); ++t) {
    const Triangle K = T.triangle(t);
    sum += g.on(K, t).integral(K);
    area += K.area();
  }
  g.c[0] -= sum / area;
  return g;
}

/// Two triangles sharing the edge a--b, third vertices w0 and w1 on opposite
/// sides.  build_triangulation fixes orientation.
inline Triangulation pair_mesh(const Vec2& a, const Vec2& b, const Vec2& w0, const Vec2& w1) {
  return build_triangulation({a, b, w0, w1}, {{{0, 1, 2}}, {{0, 3, 1}}});
}

/// Random pair mesh whose vertex 0 patch has one interior edge 0--1 of
/// length ell with healthy triangles on both sides.
inline Triangulation random_pair_mesh(double* ell = nullptr) {
  for (;;) {
    const Vec2 a(urand(-1, 1), urand(-1, 1));
    const Vec2 b = a + Vec2(urand(-1, 1), urand(-1, 1));
    const Vec2 d = b - a;
    if (d.norm() < 0.3) continue;
    const Vec2 n(-d.y(), d.x());
    const Vec2 mid = 0.5 * (a + b);
    const Vec2 w0 = mid + n * urand(0.4, 1.2) + d * urand(-0.3, 0.3);
    const Vec2 w1 = mid - n * urand(0.4, 1.2) + d * urand(-0.3, 0.3);
    const Triangle k0{{a, b, w0}}, k1{{a, w1, b}};
    if (std::abs(k0.area()) < 0.05 || std::abs(k1.area()) < 0.05) continue;
    if (std::min(k0.min_angle(), k1.min_angle()) < 0.3) continue;
    if (ell) *ell = d.norm();
    return pair_mesh(a, b, w0, w1);
  }
}

/// Dead-corner fixture: vertex 0 sits alone in triangle {0,1,2}; triangle
/// {1,2,3} lies across the facing edge.
inline Triangulation dead_corner_mesh(const Vec2& v, const Vec2& w1, const Vec2& w2,
                                      const Vec2& w3) {
  return build_triangulation({v, w1, w2, w3}, {{{0, 1, 2}}, {{1, 3, 2}}});
}

inline Triangulation random_dead_corner_mesh() {
  for (;;) {
    const Vec2 w1(urand(-1, 1), urand(-1, 1));
    const Vec2 w2 = w1 + Vec2(urand(-1, 1), urand(-1, 1));
    const Vec2 d = w2 - w1;
    if (d.norm() < 0.3) continue;
    const Vec2 n(-d.y(), d.x());
    const Vec2 mid = 0.5 * (w1 + w2);
    const Vec2 v = mid + n * urand(0.4, 1.2) + d * urand(-0.3, 0.3);
    const Vec2 w3 = mid - n * urand(0.4, 1.2) + d * urand(-0.3, 0.3);
    const Triangle k1{{v, w1, w2}}, k{{w1, w3, w2}};
    if (std::abs(k1.area()) < 0.05 || std::abs(k.area()) < 0.05) continue;
    if (std::min(k1.min_angle(), k.min_angle()) < 0.3) continue;
    return dead_corner_mesh(v, w1, w2, w3);
  }
}

/// Velocity field whose per-triangle polynomials are the curls of a stream
/// coefficient vector; also hands back the matching generalized load.
struct OracleData {
  Triangulation mesh;
  ArgyrisDofMap dofmap;
  StreamField stream;
  VelocityField u;
  GlobalCubic pstar;
  std::unique_ptr<GeneralizedLoad> load;
};

/// Fills in place: members hold pointers into each other, so the object must
/// already sit at its final address.
inline void make_oracle(OracleData& d, int n, bool singular_corners, double amp = 1.0) {
  d.mesh = generate_crisscross(n, singular_corners);
  d.dofmap = build_dof_map(d.mesh);
  d.stream.mesh = &d.mesh;
  d.stream.dofmap = &d.dofmap;
  d.stream.coeffs = random_vector(d.dofmap.n_free, amp);
  d.u.mesh = &d.mesh;
  std::vector<VecPoly> ustar;
  std::vector<TriPoly> pstar;
  d.pstar = zero_mean_on(random_global_cubic(), d.mesh);
  for (int t = 0; t < d.mesh.n_triangles(); ++t) {
    ustar.push_back(curl_field(d.stream, t));
    pstar.push_back(d.pstar.on(d.mesh.triangle(t), t));
  }
  d.u.polys = ustar;
  d.load = std::make_unique<GeneralizedLoad>(d.mesh, std::move(ustar), std::move(pstar));
}

}  // namespace testutil
