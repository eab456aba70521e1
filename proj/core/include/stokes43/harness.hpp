#pragma once

#include "stokes43/manufactured.hpp"
#include "stokes43/pressure.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace stokes43 {

/// Cubic interpolant fixed by values and gradients at the vertices plus the
/// value at the gravity center of each triangle.
PressureField hermite_interpolant(const Triangulation& T,
                                  const std::function<double(const Vec2&)>& p,
                                  const std::function<Vec2(const Vec2&)>& grad_p);

/// (|u - u_h|_1, ||p - p_h||_0) against the analytic fields, fixed-degree
/// quadrature per triangle.
std::pair<double, double> error_norms(const Triangulation& T, const ManufacturedCase& c,
                                      const VelocityField& u_h, const PressureField& p_h,
                                      int degree = 14);

struct ConvergenceRow {
  int n = 0;
  double h = 0;
  double vel_h1_err = 0;
  double vel_order = std::numeric_limits<double>::quiet_NaN();  // NaN on the first row
  double prs_l2_err = 0;
  double prs_order = std::numeric_limits<double>::quiet_NaN();
};

/// Full pipeline per level on singular-corner crisscross meshes; orders are
/// log2 ratios of consecutive errors.
std::vector<ConvergenceRow> convergence_study(const std::vector<int>& levels,
                                              const std::string& case_name);

/// Columns n,h,vel_h1_err,vel_order,prs_l2_err,prs_order; 17 significant
/// digits; order cells empty on the first row.  Byte-deterministic.
void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows);

}  // namespace stokes43
