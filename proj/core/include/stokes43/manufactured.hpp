#pragma once

#include "stokes43/tripoly.hpp"

#include <functional>
#include <string>

namespace stokes43 {

/// Closed-form reference solution on the unit square: divergence-free velocity
/// vanishing on the boundary, zero-mean pressure, and the matching body force
/// f = -laplace(u) - grad(p) for the weak form with a +(p, div v) pairing.
struct ManufacturedCase {
  std::string name;
  std::function<Vec2(const Vec2&)> u;
  std::function<Eigen::Matrix2d(const Vec2&)> grad_u;  // row i = gradient of u_i
  std::function<double(const Vec2&)> p;
  std::function<Vec2(const Vec2&)> grad_p;
  std::function<Vec2(const Vec2&)> f;
};

/// Known cases: "trig" (u from s(t) = (t^2 - t) sin(2 pi t), p = sin(4 pi x) e^{pi y}).
ManufacturedCase manufactured_case(const std::string& name);

}  // namespace stokes43
