#include "stokes43/velocity.hpp"

#include <Eigen/SparseCholesky>

#include <cmath>

namespace stokes43 {

AnalyticLoad::AnalyticLoad(const Triangulation& T, std::function<Vec2(const Vec2&)> f, int degree)
    : mesh_(&T), rule_(&QuadRule::get(degree)) {
  const int np = static_cast<int>(rule_->points.size());
  fvals_.reserve(T.n_triangles());
  areas_.reserve(T.n_triangles());
  for (int t = 0; t < T.n_triangles(); ++t) {
    const Triangle K = T.triangle(t);
    Eigen::Matrix2Xd vals(2, np);
    for (int k = 0; k < np; ++k) vals.col(k) = f(K.point(rule_->points[k]));
    fvals_.push_back(std::move(vals));
    areas_.push_back(K.area());
  }
}

double AnalyticLoad::operator()(int t, const VecPoly& v) const {
  double sum = 0;
  for (size_t k = 0; k < rule_->points.size(); ++k) {
    const Vec2 val = v(rule_->points[k]);
    sum += rule_->weights[k] * fvals_[t].col(k).dot(val);
  }
  return sum * areas_[t];
}

GeneralizedLoad::GeneralizedLoad(const Triangulation& T, std::vector<VecPoly> ustar,
                                 std::vector<TriPoly> pstar)
    : mesh_(&T), ustar_(std::move(ustar)), pstar_(std::move(pstar)) {}

double GeneralizedLoad::operator()(int t, const VecPoly& v) const {
  const Triangle K = mesh_->triangle(t);
  return grad_inner_product(K, ustar_[t], v) + inner_product(K, pstar_[t], v.divergence(K));
}

SpdSystem assemble(const Triangulation& T, const ArgyrisDofMap& dofmap,
                   const LoadFunctional& load) {
  const int n = dofmap.n_free;
  std::vector<Eigen::Triplet<double>> trips;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);

  const QuadRule& rule = QuadRule::get(6);
  const int np = static_cast<int>(rule.points.size());
  // Values of the degree-3 barycentric monomials at the rule points.
  Eigen::MatrixXd mono3(poly_dim(3), np);
  for (int k = 0; k < np; ++k) {
    const Vec3& l = rule.points[k];
    for (int a = 3; a >= 0; --a)
      for (int b = 3 - a; b >= 0; --b)
        mono3(mono_index(3, a, b), k) =
            std::pow(l[0], a) * std::pow(l[1], b) * std::pow(l[2], 3 - a - b);
  }
  Eigen::VectorXd w(np);
  for (int k = 0; k < np; ++k) w[k] = rule.weights[k];

  for (int t = 0; t < T.n_triangles(); ++t) {
    const Triangle K = T.triangle(t);
    const ArgyrisLocal local = local_nodal_basis(K);

    // Second-derivative coefficients of the 21 quintic basis functions.
    Eigen::MatrixXd cxx(21, poly_dim(3)), cxy(21, poly_dim(3)), cyy(21, poly_dim(3));
    for (int i = 0; i < 21; ++i) {
      const TriPoly dx = local.basis[i].derivative(K, 0);
      const TriPoly dy = local.basis[i].derivative(K, 1);
      cxx.row(i) = dx.derivative(K, 0).coeffs().transpose();
      cxy.row(i) = dx.derivative(K, 1).coeffs().transpose();
      cyy.row(i) = dy.derivative(K, 1).coeffs().transpose();
    }
    const Eigen::MatrixXd vxx = cxx * mono3, vxy = cxy * mono3, vyy = cyy * mono3;
    const Eigen::MatrixXd H =
        K.area() * (vxx * w.asDiagonal() * vxx.transpose() +
                    2.0 * (vxy * w.asDiagonal() * vxy.transpose()) +
                    vyy * w.asDiagonal() * vyy.transpose());

    Eigen::Matrix<double, 21, 1> rloc;
    for (int i = 0; i < 21; ++i) rloc[i] = load(t, curl_field(K, local.basis[i]));

    const auto& inc = dofmap.incidence[t];
    for (int a = 0; a < 21; ++a) {
      for (const DofTerm& ta : inc[a]) {
        rhs[ta.index] += ta.coeff * rloc[a];
        for (int b = 0; b < 21; ++b)
          for (const DofTerm& tb : inc[b])
            trips.emplace_back(ta.index, tb.index, ta.coeff * tb.coeff * H(a, b));
      }
    }
  }

  SpdSystem sys;
  sys.matrix.resize(n, n);
  sys.matrix.setFromTriplets(trips.begin(), trips.end());
  // Mirror the upper triangle so the stored matrix is symmetric to the bit.
  Eigen::SparseMatrix<double> upper = sys.matrix.triangularView<Eigen::Upper>();
  Eigen::SparseMatrix<double> lower = upper.transpose();
  lower.diagonal().setZero();
  sys.matrix = upper + lower;
  sys.rhs = std::move(rhs);
  return sys;
}

StreamField solve_velocity(const Triangulation& T, const ArgyrisDofMap& dofmap,
                           const SpdSystem& sys) {
  StreamField s;
  s.mesh = &T;
  s.dofmap = &dofmap;
  const double bnorm = sys.rhs.norm();
  if (bnorm == 0.0) {
    s.coeffs = Eigen::VectorXd::Zero(dofmap.n_free);
    return s;
  }
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(sys.matrix);
  if (ldlt.info() != Eigen::Success)
    throw InternalError("solve_velocity: factorization breakdown");
  Eigen::VectorXd x = ldlt.solve(sys.rhs);
  // Iterative refinement down to the residual contract.
  for (int it = 0; it < 4; ++it) {
    const Eigen::VectorXd r = sys.rhs - sys.matrix * x;
    if (r.norm() <= 1e-13 * bnorm) break;
    x += ldlt.solve(r);
  }
  // Residual contract on the natural scale |b| + ||A||x||; for smooth data the
  // raw ratio |r|/|b| bottoms out at eps * |A||x| / |b| from cancellation in
  // A*x, so the contract uses that scale rather than |b| alone.
  const Eigen::SparseMatrix<double> absA = sys.matrix.cwiseAbs();
  const double scale = bnorm + (absA * x.cwiseAbs()).norm();
  if ((sys.rhs - sys.matrix * x).norm() > 1e-12 * scale)
    throw InternalError("solve_velocity: residual contract violated");
  s.coeffs = std::move(x);
  return s;
}

Eigen::Matrix2d VelocityField::grad(int t, const Vec3& lambda) const {
  const Triangle K = mesh->triangle(t);
  Eigen::Matrix2d g;
  const Vec2 gx = polys[t].x.gradient(K, lambda);
  const Vec2 gy = polys[t].y.gradient(K, lambda);
  g(0, 0) = gx.x();
  g(0, 1) = gx.y();
  g(1, 0) = gy.x();
  g(1, 1) = gy.y();
  return g;
}

VelocityField velocity_field(const StreamField& s) {
  VelocityField u;
  u.mesh = s.mesh;
  u.polys.reserve(s.mesh->n_triangles());
  for (int t = 0; t < s.mesh->n_triangles(); ++t) u.polys.push_back(curl_field(s, t));
  return u;
}

}  // namespace stokes43
