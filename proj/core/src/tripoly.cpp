#include "stokes43/tripoly.hpp"

#include <cmath>

namespace stokes43 {

double Triangle::area() const {
  return 0.5 * ((v[1].x() - v[0].x()) * (v[2].y() - v[0].y()) -
                (v[2].x() - v[0].x()) * (v[1].y() - v[0].y()));
}

double Triangle::diameter() const {
  double d = 0;
  for (int i = 0; i < 3; ++i) d = std::max(d, (v[(i + 1) % 3] - v[i]).norm());
  return d;
}

Vec2 Triangle::centroid() const { return (v[0] + v[1] + v[2]) / 3.0; }

Vec3 Triangle::barycentric(const Vec2& p) const {
  const double a2 = 2.0 * area();
  auto cross = [](const Vec2& u, const Vec2& w) { return u.x() * w.y() - u.y() * w.x(); };
  Vec3 l;
  l[0] = cross(v[2] - v[1], p - v[1]) / a2;
  l[1] = cross(v[0] - v[2], p - v[2]) / a2;
  l[2] = cross(v[1] - v[0], p - v[0]) / a2;
  return l;
}

Vec2 Triangle::point(const Vec3& lambda) const {
  return lambda[0] * v[0] + lambda[1] * v[1] + lambda[2] * v[2];
}

Vec2 Triangle::grad_lambda(int i) const {
  // lambda_i is the scaled signed distance to the edge opposite vertex i.
  const Vec2 e = v[(i + 2) % 3] - v[(i + 1) % 3];
  return Vec2(-e.y(), e.x()) / (2.0 * area());
}

double Triangle::min_angle() const {
  double m = M_PI;
  for (int i = 0; i < 3; ++i) {
    const Vec2 a = v[(i + 1) % 3] - v[i];
    const Vec2 b = v[(i + 2) % 3] - v[i];
    const double c = a.dot(b) / (a.norm() * b.norm());
    m = std::min(m, std::acos(std::clamp(c, -1.0, 1.0)));
  }
  return m;
}

AffineMap AffineMap::to(const Triangle& K) {
  AffineMap F;
  F.offset = K.v[0];
  F.mat.col(0) = K.v[1] - K.v[0];
  F.mat.col(1) = K.v[2] - K.v[0];
  F.det = F.mat.determinant();
  return F;
}

Vec2 AffineMap::inverse(const Vec2& p) const {
  const Vec2 d = p - offset;
  return Vec2(mat(1, 1) * d.x() - mat(0, 1) * d.y(),
              -mat(1, 0) * d.x() + mat(0, 0) * d.y()) /
         det;
}

TriPoly::TriPoly(int degree, Eigen::VectorXd coeffs, int tri)
    : degree_(degree), tri_(tri), c_(std::move(coeffs)) {
  if (c_.size() != poly_dim(degree_)) throw std::invalid_argument("TriPoly: coefficient count");
}

TriPoly TriPoly::zero(int degree, int tri) {
  return TriPoly(degree, Eigen::VectorXd::Zero(poly_dim(degree)), tri);
}

TriPoly TriPoly::constant(int degree, double value, int tri) {
  TriPoly p = zero(0, tri);
  p.c_[0] = value;
  return p.promoted(degree);
}

TriPoly TriPoly::monomial(int degree, int a, int b, int tri) {
  TriPoly p = zero(degree, tri);
  p.c_[mono_index(degree, a, b)] = 1.0;
  return p;
}

TriPoly TriPoly::linear(const Vec3& vertex_values, int tri) {
  TriPoly p = zero(1, tri);
  p.c_[mono_index(1, 1, 0)] = vertex_values[0];
  p.c_[mono_index(1, 0, 1)] = vertex_values[1];
  p.c_[mono_index(1, 0, 0)] = vertex_values[2];
  return p;
}

double TriPoly::operator()(const Vec3& l) const {
  double sum = 0;
  for (int a = degree_; a >= 0; --a)
    for (int b = degree_ - a; b >= 0; --b) {
      const int c = degree_ - a - b;
      const double coeff = c_[mono_index(degree_, a, b)];
      if (coeff == 0) continue;
      sum += coeff * std::pow(l[0], a) * std::pow(l[1], b) * std::pow(l[2], c);
    }
  return sum;
}

double TriPoly::at_vertex(int i) const {
  Vec3 l = Vec3::Zero();
  l[i] = 1.0;
  // Only the pure power of lambda_i survives.
  const int a = (i == 0) ? degree_ : 0;
  const int b = (i == 1) ? degree_ : 0;
  (void)l;
  return c_[mono_index(degree_, a, b)];
}

TriPoly TriPoly::promoted(int degree) const {
  if (degree < degree_) throw std::invalid_argument("TriPoly::promoted: lower degree");
  TriPoly out = *this;
  while (out.degree_ < degree) {
    const int d = out.degree_;
    TriPoly next = zero(d + 1, tri_);
    for (int a = d; a >= 0; --a)
      for (int b = d - a; b >= 0; --b) {
        const double coeff = out.c_[mono_index(d, a, b)];
        if (coeff == 0) continue;
        next.c_[mono_index(d + 1, a + 1, b)] += coeff;
        next.c_[mono_index(d + 1, a, b + 1)] += coeff;
        next.c_[mono_index(d + 1, a, b)] += coeff;
      }
    out = next;
  }
  return out;
}

TriPoly TriPoly::operator+(const TriPoly& o) const {
  const int d = std::max(degree_, o.degree_);
  TriPoly a = promoted(d), b = o.promoted(d);
  a.c_ += b.c_;
  return a;
}

TriPoly TriPoly::operator-(const TriPoly& o) const { return *this + o * (-1.0); }

TriPoly TriPoly::operator*(double s) const {
  TriPoly p = *this;
  p.c_ *= s;
  return p;
}

TriPoly& TriPoly::operator+=(const TriPoly& o) {
  *this = *this + o;
  return *this;
}

TriPoly TriPoly::operator*(const TriPoly& o) const {
  const int d = degree_ + o.degree_;
  TriPoly out = zero(d, tri_);
  for (int a1 = degree_; a1 >= 0; --a1)
    for (int b1 = degree_ - a1; b1 >= 0; --b1) {
      const double c1 = c_[mono_index(degree_, a1, b1)];
      if (c1 == 0) continue;
      for (int a2 = o.degree_; a2 >= 0; --a2)
        for (int b2 = o.degree_ - a2; b2 >= 0; --b2) {
          const double c2 = o.c_[mono_index(o.degree_, a2, b2)];
          if (c2 == 0) continue;
          out.c_[mono_index(d, a1 + a2, b1 + b2)] += c1 * c2;
        }
    }
  return out;
}

TriPoly TriPoly::derivative(const Triangle& K, int dir) const {
  const int d = degree_;
  if (d == 0) return zero(0, tri_);
  const double g[3] = {K.grad_lambda(0)[dir], K.grad_lambda(1)[dir], K.grad_lambda(2)[dir]};
  TriPoly out = zero(d - 1, tri_);
  for (int a = d; a >= 0; --a)
    for (int b = d - a; b >= 0; --b) {
      const int c = d - a - b;
      const double coeff = c_[mono_index(d, a, b)];
      if (coeff == 0) continue;
      if (a > 0) out.c_[mono_index(d - 1, a - 1, b)] += coeff * a * g[0];
      if (b > 0) out.c_[mono_index(d - 1, a, b - 1)] += coeff * b * g[1];
      if (c > 0) out.c_[mono_index(d - 1, a, b)] += coeff * c * g[2];
    }
  return out;
}

Vec2 TriPoly::gradient(const Triangle& K, const Vec3& lambda) const {
  return Vec2(derivative(K, 0)(lambda), derivative(K, 1)(lambda));
}

double monomial_integral(int a, int b, int c) {
  // int_T l1^a l2^b l3^c = 2|T| a! b! c! / (a+b+c+2)!  ; here |T| = 1.
  double r = 2.0;
  // a!b!c!/(a+b+c+2)! computed as a stable product of ratios.
  int n = a + b + c + 2;
  auto factor = [&](int k) {
    for (int i = 2; i <= k; ++i) r *= i;
  };
  factor(a);
  factor(b);
  factor(c);
  for (int i = 2; i <= n; ++i) r /= i;
  return r;
}

double TriPoly::integral(const Triangle& K) const {
  double sum = 0;
  for (int a = degree_; a >= 0; --a)
    for (int b = degree_ - a; b >= 0; --b) {
      const double coeff = c_[mono_index(degree_, a, b)];
      if (coeff == 0) continue;
      sum += coeff * monomial_integral(a, b, degree_ - a - b);
    }
  return sum * K.area();
}

double inner_product(const Triangle& K, const TriPoly& a, const TriPoly& b) {
  return (a * b).integral(K);
}

TriPoly VecPoly::divergence(const Triangle& K) const {
  return x.derivative(K, 0) + y.derivative(K, 1);
}

double grad_inner_product(const Triangle& K, const VecPoly& a, const VecPoly& b) {
  double sum = 0;
  for (int dir = 0; dir < 2; ++dir) {
    sum += inner_product(K, a.x.derivative(K, dir), b.x.derivative(K, dir));
    sum += inner_product(K, a.y.derivative(K, dir), b.y.derivative(K, dir));
  }
  return sum;
}

}  // namespace stokes43
