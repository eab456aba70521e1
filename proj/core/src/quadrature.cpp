#include "stokes43/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace stokes43 {
namespace {

// Gauss-Legendre nodes and weights on [0,1] by Newton iteration on P_n.
void gauss_legendre01(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));  // on [-1,1]
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n * (t * p1 - p0) / (t * t - 1.0);
    x[i] = 0.5 * (t + 1.0);
    w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
  }
}

QuadRule make_rule(int degree) {
  // Conical product rule: map the unit square onto the reference triangle by
  // (u, v) -> (u, v(1-u)); the Jacobian (1-u) raises the u-degree by one.
  const int nu = (degree + 3) / 2;  // exact for degree+1 in u
  const int nv = (degree + 2) / 2;
  std::vector<double> xu, wu, xv, wv;
  gauss_legendre01(nu, xu, wu);
  gauss_legendre01(std::max(nv, 1), xv, wv);

  QuadRule rule;
  rule.exactness = degree;
  for (int i = 0; i < nu; ++i)
    for (size_t j = 0; j < xv.size(); ++j) {
      const double X = xu[i];
      const double Y = xv[j] * (1.0 - xu[i]);
      rule.points.push_back(Vec3(1.0 - X - Y, X, Y));
      // weights sum to 1/2 (reference area); normalize to 1
      rule.weights.push_back(2.0 * wu[i] * wv[j] * (1.0 - xu[i]));
    }

  // Verify exactness against the factorial formula.
  for (int a = degree; a >= 0; --a)
    for (int b = degree - a; b >= 0; --b) {
      const int c = degree - a - b;
      double q = 0;
      for (size_t k = 0; k < rule.points.size(); ++k) {
        const Vec3& l = rule.points[k];
        q += rule.weights[k] * std::pow(l[0], a) * std::pow(l[1], b) * std::pow(l[2], c);
      }
      const double exact = monomial_integral(a, b, c);
      if (std::abs(q - exact) > 1e-13 * std::max(1.0, std::abs(exact)))
        throw std::logic_error("QuadRule: exactness check failed");
    }
  return rule;
}

}  // namespace

const QuadRule& QuadRule::get(int degree) {
  if (degree < 1 || degree > 20) throw std::invalid_argument("QuadRule degree out of [1,20]");
  static std::map<int, QuadRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(degree);
  if (it == cache.end()) it = cache.emplace(degree, make_rule(degree)).first;
  return it->second;
}

}  // namespace stokes43
