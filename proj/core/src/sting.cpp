#include "stokes43/sting.hpp"

#include <stdexcept>

namespace stokes43 {

namespace {

TriPoly make_sting(int lv) {
  // Homogenization of 28/5 y^3 - 63/10 y^2 + 9/5 y - 1/10 with y = lambda_lv.
  Vec3 unit = Vec3::Zero();
  unit[lv] = 1.0;
  const TriPoly y = TriPoly::linear(unit);
  const TriPoly y2 = y * y;
  const TriPoly y3 = y2 * y;
  return y3 * (28.0 / 5.0) + y2.promoted(3) * (-63.0 / 10.0) + y.promoted(3) * (9.0 / 5.0) +
         TriPoly::constant(3, -1.0 / 10.0);
}

}  // namespace

const TriPoly& sting_local(int lv) {
  static const std::array<TriPoly, 3> stings = {make_sting(0), make_sting(1), make_sting(2)};
  return stings.at(lv);
}

const std::array<VecPoly, 6>& bubble_basis() {
  static const std::array<VecPoly, 6> basis = [] {
    std::array<VecPoly, 6> b;
    const TriPoly cubic_bubble =
        TriPoly::monomial(1, 1, 0) * TriPoly::monomial(1, 0, 1) * TriPoly::monomial(1, 0, 0);
    for (int i = 0; i < 3; ++i) {
      Vec3 unit = Vec3::Zero();
      unit[i] = 1.0;
      const TriPoly li = TriPoly::linear(unit);
      const TriPoly q = cubic_bubble * li;  // degree 4
      b[2 * i] = VecPoly{q, TriPoly::zero(4)};
      b[2 * i + 1] = VecPoly{TriPoly::zero(4), q};
    }
    return b;
  }();
  return basis;
}

std::array<TriPoly, 6> nonsting_basis(const Triangle& K) {
  std::array<TriPoly, 6> ns;
  const auto& bubbles = bubble_basis();
  for (int i = 0; i < 6; ++i) ns[i] = bubbles[i].divergence(K);
  return ns;
}

P3Decomposition decompose_p3(const Triangle& K, const TriPoly& q) {
  if (q.degree() > 3) throw std::invalid_argument("decompose_p3: degree > 3");
  const TriPoly q3 = q.promoted(3);

  std::array<TriPoly, 4> span = {sting_local(0), sting_local(1), sting_local(2),
                                 TriPoly::constant(3, 1.0)};
  Eigen::Matrix4d gram;
  Eigen::Vector4d rhs;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j <= i; ++j) {
      gram(i, j) = gram(j, i) = inner_product(K, span[i], span[j]);
    }
    rhs[i] = inner_product(K, q3, span[i]);
  }
  Eigen::FullPivLU<Eigen::Matrix4d> lu(gram);
  if (!lu.isInvertible()) throw std::runtime_error("decompose_p3: singular Gram matrix");
  const Eigen::Vector4d beta = lu.solve(rhs);

  P3Decomposition out;
  out.sting = beta.head<3>();
  out.constant = beta[3];
  out.nonsting = q3;
  for (int i = 0; i < 4; ++i) out.nonsting += span[i] * (-beta[i]);
  out.nonsting.set_tri(q.tri());
  return out;
}

}  // namespace stokes43
