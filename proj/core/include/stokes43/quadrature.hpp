#pragma once

#include "stokes43/tripoly.hpp"

#include <vector>

namespace stokes43 {

/// Quadrature rule on the reference triangle in barycentric coordinates.
/// Weights are normalized to sum to 1; multiply by |K| when integrating on a
/// physical triangle.
struct QuadRule {
  int exactness = 0;
  std::vector<Vec3> points;
  std::vector<double> weights;

  /// Cached rule exact for polynomials of total degree <= degree, degree in [1, 20].
  /// Exactness is verified against the closed-form monomial integrals at
  /// construction.
  static const QuadRule& get(int degree);

  template <class F>
  double integrate(const Triangle& K, F&& f) const {
    double sum = 0;
    for (size_t i = 0; i < points.size(); ++i) sum += weights[i] * f(K.point(points[i]));
    return sum * K.area();
  }
};

}  // namespace stokes43
