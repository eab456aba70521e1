#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "stokes43/sting.hpp"

using namespace stokes43;
using namespace testutil;

TEST_CASE("affine map composes with its inverse to the identity") {
  for (int i = 0; i < 20; ++i) {
    const Triangle K = random_triangle();
    const AffineMap F = AffineMap::to(K);
    CHECK(F.det > 0);
    CHECK(F.det == doctest::Approx(2 * K.area()).epsilon(1e-13));
    const Vec2 p(urand(0, 1), urand(0, 1));
    CHECK((F.inverse(F(p)) - p).norm() < 1e-14);
  }
}

TEST_CASE("tripoly evaluation agrees with reference pullback") {
  for (int i = 0; i < 20; ++i) {
    const Triangle K = random_triangle();
    const AffineMap F = AffineMap::to(K);
    const TriPoly q = random_poly(3);
    const Vec2 ref(urand(0.05, 0.4), urand(0.05, 0.4));
    const Vec2 phys = F(ref);
    const double direct = q(K.barycentric(phys));
    const double pulled = q(reference_triangle().barycentric(ref));
    CHECK(direct == doctest::Approx(pulled).epsilon(1e-13));
  }
}

TEST_CASE("quadrature rules integrate reference monomials exactly") {
  const Triangle& ref = reference_triangle();
  SUBCASE("constant") {
    const QuadRule& r = QuadRule::get(1);
    CHECK(r.integrate(ref, [](const Vec2&) { return 1.0; }) == doctest::Approx(0.5).epsilon(1e-14));
  }
  SUBCASE("product of all three barycentrics") {
    const QuadRule& r = QuadRule::get(3);
    const auto f = [&](const Vec2& p) {
      const Vec3 l = ref.barycentric(p);
      return l[0] * l[1] * l[2];
    };
    CHECK(r.integrate(ref, f) == doctest::Approx(1.0 / 120.0).epsilon(1e-13));
  }
  SUBCASE("degree-8 rule on x^4 y^4 against the factorial formula") {
    const QuadRule& r = QuadRule::get(8);
    const auto f = [](const Vec2& p) { return std::pow(p.x(), 4) * std::pow(p.y(), 4); };
    // On the reference triangle x^4 y^4 = l2^4 l3^4; factorial formula gives
    // 2|T| 4!4!0!/10!.
    const double exact = 2.0 * 0.5 * (24.0 * 24.0) / 3628800.0;
    CHECK(r.integrate(ref, f) == doctest::Approx(exact).epsilon(1e-13));
  }
  SUBCASE("weights sum to one for every cached degree") {
    for (int d = 1; d <= 20; ++d) {
      const QuadRule& r = QuadRule::get(d);
      double sum = 0;
      for (double w : r.weights) sum += w;
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(r.exactness >= d);
    }
  }
}

TEST_CASE("sting cubic: vertex value, opposite-edge value, interior sample") {
  for (int lv = 0; lv < 3; ++lv) {
    const TriPoly& st = sting_local(lv);
    CHECK(st(Vec3::Unit(lv)) == doctest::Approx(1.0).epsilon(1e-13));
    for (int s = 0; s <= 5; ++s) {
      Vec3 l = Vec3::Zero();
      l[(lv + 1) % 3] = s / 5.0;
      l[(lv + 2) % 3] = 1.0 - s / 5.0;
      CHECK(st(l) == doctest::Approx(-0.1).epsilon(1e-13));
    }
  }
  // The cubic depends only on the coordinate toward the vertex; at height 1/2
  // its value is 28/40 - 63/40 + 9/10 - 1/10 = -3/40.
  const TriPoly& st = sting_local(2);
  CHECK(st(Vec3(0.5, 0.0, 0.5)) == doctest::Approx(-3.0 / 40.0).epsilon(1e-13));
  CHECK(st(Vec3(0.2, 0.3, 0.5)) == doctest::Approx(-3.0 / 40.0).epsilon(1e-13));
}

TEST_CASE("sting pairing on the reference triangle") {
  const Triangle& ref = reference_triangle();
  const TriPoly& st = sting_local(2);  // vertex (0,1)
  const TriPoly y = TriPoly::monomial(1, 0, 0).promoted(3);  // l3 = y
  const TriPoly one = TriPoly::constant(3, 1.0);
  CHECK(inner_product(ref, st, y) == doctest::Approx(1.0 / 200.0).epsilon(1e-13));
  CHECK(inner_product(ref, st, one) == doctest::Approx(1.0 / 200.0).epsilon(1e-13));
}

TEST_CASE("sting pairing identity on random triangles and all cubic monomials") {
  for (int i = 0; i < 100; ++i) {
    const Triangle K = random_triangle();
    for (int lv = 0; lv < 3; ++lv) {
      const TriPoly& st = sting_local(lv);
      for (int a = 3; a >= 0; --a)
        for (int b = 3 - a; b >= 0; --b) {
          const TriPoly q = TriPoly::monomial(3, a, b);
          const double got = inner_product(K, st, q);
          const double want = (K.area() / 100.0) * q(Vec3::Unit(lv));
          CHECK(std::abs(got - want) <= 1e-12 * K.area() * q.coeffs().cwiseAbs().maxCoeff());
        }
    }
  }
}

TEST_CASE("scaled sting sum integrates to 3|K|/80") {
  for (int i = 0; i < 10; ++i) {
    const Triangle K = random_triangle();
    TriPoly sum = TriPoly::zero(3);
    for (int lv = 0; lv < 3; ++lv) sum += sting_local(lv);
    CHECK((sum * 1.25).integral(K) == doctest::Approx(3.0 / 80.0 * K.area()).epsilon(1e-13));
  }
}

TEST_CASE("bubble basis traces vanish on all edges and divergences have zero mean") {
  const Triangle K = random_triangle();
  const auto& bubbles = bubble_basis();
  for (const VecPoly& b : bubbles) {
    for (int e = 0; e < 3; ++e)
      for (int s = 0; s <= 4; ++s) {
        Vec3 l = Vec3::Zero();
        l[(e + 1) % 3] = 0.1 + 0.2 * s;
        l[(e + 2) % 3] = 1.0 - l[(e + 1) % 3];
        CHECK(b(l).norm() < 1e-13);
      }
    CHECK(std::abs(b.divergence(K).integral(K)) < 1e-13);
  }
}

TEST_CASE("divergence Gram of the bubble basis is positive definite") {
  const Triangle K = random_triangle();
  const auto ns = nonsting_basis(K);
  Eigen::Matrix<double, 6, 6> G;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) G(i, j) = inner_product(K, ns[i], ns[j]);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> eig(G);
  CHECK(eig.eigenvalues().minCoeff() > 0);
  // Full rank = the span has dimension 6.
  CHECK(eig.eigenvalues().minCoeff() > 1e-12 * eig.eigenvalues().maxCoeff());
}

TEST_CASE("nonsting members vanish at vertices and are orthogonal to stings") {
  const Triangle K = random_triangle();
  const auto ns = nonsting_basis(K);
  double scale = 0;
  for (const TriPoly& q : ns) scale = std::max(scale, q.max_abs_coeff());
  for (const TriPoly& q : ns) {
    for (int lv = 0; lv < 3; ++lv) CHECK(std::abs(q(Vec3::Unit(lv))) < 1e-12 * scale);
    for (int lv = 0; lv < 3; ++lv)
      CHECK(std::abs(inner_product(K, q, sting_local(lv))) < 1e-12 * K.area() * scale);
    CHECK(std::abs(q.integral(K)) < 1e-12 * K.area() * scale);
  }
}

TEST_CASE("cubic decomposition: basis members, constants, and round trips") {
  const Triangle K = random_triangle();
  SUBCASE("a sting is its own decomposition") {
    const P3Decomposition d = decompose_p3(K, sting_local(0));
    CHECK(d.sting[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(d.sting[1]) < 1e-12);
    CHECK(std::abs(d.sting[2]) < 1e-12);
    CHECK(std::abs(d.constant) < 1e-12);
    CHECK(d.nonsting.max_abs_coeff() < 1e-12);
  }
  SUBCASE("the constant function") {
    const P3Decomposition d = decompose_p3(K, TriPoly::constant(3, 1.0));
    CHECK(d.constant == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.sting.cwiseAbs().maxCoeff() < 1e-12);
    CHECK(d.nonsting.max_abs_coeff() < 1e-12);
  }
  SUBCASE("100 random cubics reconstruct and split orthogonally") {
    for (int i = 0; i < 100; ++i) {
      const Triangle Ki = random_triangle();
      const TriPoly q = random_poly(3);
      const P3Decomposition d = decompose_p3(Ki, q);
      TriPoly back = d.nonsting + TriPoly::constant(3, d.constant);
      for (int lv = 0; lv < 3; ++lv) back += sting_local(lv) * d.sting[lv];
      CHECK((back.coeffs() - q.coeffs()).cwiseAbs().maxCoeff() <=
            1e-12 * q.coeffs().cwiseAbs().maxCoeff());
      for (int lv = 0; lv < 3; ++lv)
        CHECK(std::abs(inner_product(Ki, d.nonsting, sting_local(lv))) <
              1e-12 * Ki.area() * (1 + q.max_abs_coeff()));
      CHECK(std::abs(d.nonsting.integral(Ki)) < 1e-12 * Ki.area() * (1 + q.max_abs_coeff()));
    }
  }
  SUBCASE("projection: decomposing a nonsting part returns it unchanged") {
    const TriPoly q = random_poly(3);
    const P3Decomposition d = decompose_p3(K, q);
    const P3Decomposition dd = decompose_p3(K, d.nonsting);
    CHECK(dd.sting.cwiseAbs().maxCoeff() < 1e-11);
    CHECK(std::abs(dd.constant) < 1e-11);
    CHECK((dd.nonsting.coeffs() - d.nonsting.coeffs()).cwiseAbs().maxCoeff() <
          1e-11 * (1 + d.nonsting.max_abs_coeff()));
  }
}

TEST_CASE("monomial integral matches the factorial formula") {
  // 2 a! b! c! / (a+b+c+2)! per unit area.
  CHECK(monomial_integral(0, 0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(monomial_integral(1, 1, 1) == doctest::Approx(2.0 / 120.0).epsilon(1e-14));
  CHECK(monomial_integral(4, 4, 0) == doctest::Approx(2.0 * 24 * 24 / 3628800.0).epsilon(1e-13));
}
