#pragma once

#include <Eigen/Dense>

#include <array>
#include <stdexcept>

namespace stokes43 {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

constexpr int poly_dim(int degree) { return (degree + 1) * (degree + 2) / 2; }

// Barycentric monomials l1^a l2^b l3^c of total degree d are ordered with a
// descending, then b descending.  c = d - a - b is implicit.
constexpr int mono_index(int d, int a, int b) {
  return (d - a) * (d - a + 1) / 2 + (d - a - b);
}

/// A physical triangle with counterclockwise vertices.
struct Triangle {
  std::array<Vec2, 3> v;

  double area() const;  // signed; positive for ccw orientation
  double diameter() const;
  Vec2 centroid() const;
  Vec3 barycentric(const Vec2& p) const;
  Vec2 point(const Vec3& lambda) const;
  Vec2 grad_lambda(int i) const;
  double min_angle() const;
};

inline const Triangle& reference_triangle() {
  static const Triangle ref{{Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)}};
  return ref;
}

/// Affine map from the reference triangle (0,0),(1,0),(0,1) onto K.
struct AffineMap {
  Eigen::Matrix2d mat;
  Vec2 offset;
  double det;  // = 2|K|

  static AffineMap to(const Triangle& K);
  Vec2 operator()(const Vec2& ref_point) const { return mat * ref_point + offset; }
  Vec2 inverse(const Vec2& phys_point) const;
};

/// Polynomial on one triangle, stored as coefficients over the barycentric
/// monomial basis of its degree.
class TriPoly {
 public:
  TriPoly() = default;
  TriPoly(int degree, Eigen::VectorXd coeffs, int tri = -1);

  static TriPoly zero(int degree, int tri = -1);
  static TriPoly constant(int degree, double value, int tri = -1);
  static TriPoly monomial(int degree, int a, int b, int tri = -1);
  static TriPoly linear(const Vec3& vertex_values, int tri = -1);

  int degree() const { return degree_; }
  int tri() const { return tri_; }
  void set_tri(int t) { tri_ = t; }
  const Eigen::VectorXd& coeffs() const { return c_; }
  Eigen::VectorXd& coeffs() { return c_; }

  double operator()(const Vec3& lambda) const;
  double at_vertex(int i) const;

  /// Same polynomial re-expressed in the homogeneous basis of a higher degree.
  TriPoly promoted(int degree) const;

  TriPoly operator+(const TriPoly& o) const;
  TriPoly operator-(const TriPoly& o) const;
  TriPoly operator*(double s) const;
  TriPoly& operator+=(const TriPoly& o);
  TriPoly operator*(const TriPoly& o) const;

  /// Partial derivative in physical direction dir (0 = x, 1 = y).
  TriPoly derivative(const Triangle& K, int dir) const;
  Vec2 gradient(const Triangle& K, const Vec3& lambda) const;

  double integral(const Triangle& K) const;
  double max_abs_coeff() const { return c_.size() ? c_.cwiseAbs().maxCoeff() : 0.0; }

 private:
  int degree_ = 0;
  int tri_ = -1;
  Eigen::VectorXd c_ = Eigen::VectorXd::Zero(1);
};

inline TriPoly operator*(double s, const TriPoly& p) { return p * s; }

/// Exact integral of l1^a l2^b l3^c over a triangle of unit area.
double monomial_integral(int a, int b, int c);

/// Exact L2 inner product of two polynomials on K.
double inner_product(const Triangle& K, const TriPoly& a, const TriPoly& b);

/// Vector-valued polynomial on one triangle.
struct VecPoly {
  TriPoly x, y;

  int degree() const { return x.degree(); }
  Vec2 operator()(const Vec3& lambda) const { return Vec2(x(lambda), y(lambda)); }
  TriPoly divergence(const Triangle& K) const;
  VecPoly operator*(double s) const { return {x * s, y * s}; }
  VecPoly operator+(const VecPoly& o) const { return {x + o.x, y + o.y}; }
};

/// (grad a, grad b)_K for vector fields, i.e. the H1 seminorm pairing.
double grad_inner_product(const Triangle& K, const VecPoly& a, const VecPoly& b);

}  // namespace stokes43
