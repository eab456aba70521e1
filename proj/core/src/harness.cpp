#include "stokes43/harness.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace stokes43 {

PressureField hermite_interpolant(const Triangulation& T,
                                  const std::function<double(const Vec2&)>& p,
                                  const std::function<Vec2(const Vec2&)>& grad_p) {
  PressureField out;
  out.mesh = &T;
  out.polys.reserve(T.n_triangles());
  const Vec3 G(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);

  for (int t = 0; t < T.n_triangles(); ++t) {
    const Triangle K = T.triangle(t);
    Eigen::Matrix<double, 10, 10> A;
    Eigen::Matrix<double, 10, 1> b;
    int col = 0;
    for (int a = 3; a >= 0; --a)
      for (int bb = 3 - a; bb >= 0; --bb) {
        const TriPoly m = TriPoly::monomial(3, a, bb);
        for (int i = 0; i < 3; ++i) {
          A(i, col) = m(Vec3::Unit(i));
          const Vec2 g = m.gradient(K, Vec3::Unit(i));
          A(3 + 2 * i, col) = g.x();
          A(4 + 2 * i, col) = g.y();
        }
        A(9, col) = m(G);
        ++col;
      }
    for (int i = 0; i < 3; ++i) {
      b[i] = p(K.v[i]);
      const Vec2 g = grad_p(K.v[i]);
      b[3 + 2 * i] = g.x();
      b[4 + 2 * i] = g.y();
    }
    b[9] = p(K.centroid());

    Eigen::FullPivLU<Eigen::Matrix<double, 10, 10>> lu(A);
    if (!lu.isInvertible()) throw InternalError("hermite_interpolant: singular nodal system");
    out.polys.emplace_back(3, Eigen::VectorXd(lu.solve(b)), t);
  }
  return out;
}

std::pair<double, double> error_norms(const Triangulation& T, const ManufacturedCase& c,
                                      const VelocityField& u_h, const PressureField& p_h,
                                      int degree) {
  const QuadRule& rule = QuadRule::get(degree);
  double vel2 = 0, prs2 = 0;
  for (int t = 0; t < T.n_triangles(); ++t) {
    const Triangle K = T.triangle(t);
    const double area = K.area();
    for (size_t k = 0; k < rule.points.size(); ++k) {
      const Vec3& l = rule.points[k];
      const Vec2 x = K.point(l);
      const Eigen::Matrix2d dg = c.grad_u(x) - u_h.grad(t, l);
      const double dp = c.p(x) - p_h.eval(t, l);
      vel2 += rule.weights[k] * area * dg.squaredNorm();
      prs2 += rule.weights[k] * area * dp * dp;
    }
  }
  return {std::sqrt(vel2), std::sqrt(prs2)};
}

std::vector<ConvergenceRow> convergence_study(const std::vector<int>& levels,
                                              const std::string& case_name) {
  for (size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 2) throw std::invalid_argument("convergence_study: levels must be >= 2");
    if (i && levels[i] <= levels[i - 1])
      throw std::invalid_argument("convergence_study: levels must be ascending");
  }
  const ManufacturedCase c = manufactured_case(case_name);
  std::vector<ConvergenceRow> rows;
  for (int n : levels) {
    const Triangulation T = generate_crisscross(n, /*singular_corners=*/true);
    const auto classes = classify_vertices(T, T.min_angle());
    const ArgyrisDofMap dofmap = build_dof_map(T);
    const AnalyticLoad load(T, c.f);
    const SpdSystem sys = assemble(T, dofmap, load);
    const StreamField stream = solve_velocity(T, dofmap, sys);
    const VelocityField u_h = velocity_field(stream);
    const PressureField p_h = recover_pressure(T, classes, u_h, load);
    const auto [ev, ep] = error_norms(T, c, u_h, p_h);

    ConvergenceRow row;
    row.n = n;
    row.h = T.h;
    row.vel_h1_err = ev;
    row.prs_l2_err = ep;
    if (!rows.empty()) {
      row.vel_order = std::log2(rows.back().vel_h1_err / ev);
      row.prs_order = std::log2(rows.back().prs_l2_err / ep);
    }
    rows.push_back(row);
  }
  return rows;
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
  os << "n,h,vel_h1_err,vel_order,prs_l2_err,prs_order\n";
  char buf[64];
  const auto fmt = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  for (const ConvergenceRow& r : rows) {
    os << r.n << ',' << fmt(r.h) << ',' << fmt(r.vel_h1_err) << ',';
    if (!std::isnan(r.vel_order)) os << fmt(r.vel_order);
    os << ',' << fmt(r.prs_l2_err) << ',';
    if (!std::isnan(r.prs_order)) os << fmt(r.prs_order);
    os << '\n';
  }
}

}  // namespace stokes43
