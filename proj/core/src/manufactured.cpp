#include "stokes43/manufactured.hpp"

#include <cmath>
#include <stdexcept>

namespace stokes43 {

namespace {

constexpr double kPi = 3.14159265358979323846;

double s0(double t) { return (t * t - t) * std::sin(2 * kPi * t); }
double s1(double t) {
  return (2 * t - 1) * std::sin(2 * kPi * t) + 2 * kPi * (t * t - t) * std::cos(2 * kPi * t);
}
double s2(double t) {
  return 2 * std::sin(2 * kPi * t) + 4 * kPi * (2 * t - 1) * std::cos(2 * kPi * t) -
         4 * kPi * kPi * (t * t - t) * std::sin(2 * kPi * t);
}
double s3(double t) {
  return 12 * kPi * std::cos(2 * kPi * t) - 12 * kPi * kPi * (2 * t - 1) * std::sin(2 * kPi * t) -
         8 * kPi * kPi * kPi * (t * t - t) * std::cos(2 * kPi * t);
}

}  // namespace

ManufacturedCase manufactured_case(const std::string& name) {
  if (name != "trig") throw std::invalid_argument("manufactured_case: unknown case " + name);
  ManufacturedCase c;
  c.name = name;
  c.u = [](const Vec2& x) { return Vec2(s0(x.x()) * s1(x.y()), -s1(x.x()) * s0(x.y())); };
  c.grad_u = [](const Vec2& x) {
    Eigen::Matrix2d g;
    g(0, 0) = s1(x.x()) * s1(x.y());
    g(0, 1) = s0(x.x()) * s2(x.y());
    g(1, 0) = -s2(x.x()) * s0(x.y());
    g(1, 1) = -s1(x.x()) * s1(x.y());
    return g;
  };
  c.p = [](const Vec2& x) { return std::sin(4 * kPi * x.x()) * std::exp(kPi * x.y()); };
  c.grad_p = [](const Vec2& x) {
    const double e = std::exp(kPi * x.y());
    return Vec2(4 * kPi * std::cos(4 * kPi * x.x()) * e, kPi * std::sin(4 * kPi * x.x()) * e);
  };
  c.f = [gp = c.grad_p](const Vec2& x) {
    const Vec2 lap(s2(x.x()) * s1(x.y()) + s0(x.x()) * s3(x.y()),
                   -s3(x.x()) * s0(x.y()) - s1(x.x()) * s2(x.y()));
    return Vec2(-lap - gp(x));
  };
  return c;
}

}  // namespace stokes43
