#pragma once

#include "stokes43/argyris.hpp"
#include "stokes43/mesh.hpp"
#include "stokes43/quadrature.hpp"

#include <Eigen/Sparse>

#include <functional>
#include <memory>

namespace stokes43 {

/// Linear functional v -> (f, v), evaluated against a vector polynomial
/// supported on one triangle.  Totals over a multi-triangle test function are
/// accumulated by the caller.
struct LoadFunctional {
  virtual ~LoadFunctional() = default;
  virtual double operator()(int t, const VecPoly& v) const = 0;
};

/// Analytic body force, integrated with a fixed-degree rule.  Values of f at
/// the quadrature points are cached per triangle.
class AnalyticLoad : public LoadFunctional {
 public:
  AnalyticLoad(const Triangulation& T, std::function<Vec2(const Vec2&)> f, int degree = 14);
  double operator()(int t, const VecPoly& v) const override;

 private:
  const Triangulation* mesh_;
  const QuadRule* rule_;
  std::vector<Eigen::Matrix2Xd> fvals_;  // per triangle, f at rule points
  std::vector<double> areas_;
};

/// v -> (grad u*, grad v) + (p*, div v) for a discrete reference pair; used by
/// the polynomial-exactness oracles.
class GeneralizedLoad : public LoadFunctional {
 public:
  GeneralizedLoad(const Triangulation& T, std::vector<VecPoly> ustar, std::vector<TriPoly> pstar);
  double operator()(int t, const VecPoly& v) const override;

  const VecPoly& ustar(int t) const { return ustar_[t]; }
  const TriPoly& pstar(int t) const { return pstar_[t]; }

 private:
  const Triangulation* mesh_;
  std::vector<VecPoly> ustar_;
  std::vector<TriPoly> pstar_;
};

struct SpdSystem {
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd rhs;
};

/// Stiffness (i,j) = (grad curl phi_i, grad curl phi_j), assembled as the H2
/// inner product of the stream basis; rhs_i = load(curl phi_i).
SpdSystem assemble(const Triangulation& T, const ArgyrisDofMap& dofmap,
                   const LoadFunctional& load);

/// Direct sparse factorization with iterative refinement; the residual must
/// reach 1e-12 of the natural scale |b| + ||A||x|| or the solve throws.
StreamField solve_velocity(const Triangulation& T, const ArgyrisDofMap& dofmap,
                           const SpdSystem& sys);

/// Per-triangle curl expansion of the stream function.
struct VelocityField {
  const Triangulation* mesh = nullptr;
  std::vector<VecPoly> polys;  // degree 4, divergence-free

  Vec2 eval(int t, const Vec3& lambda) const { return polys[t](lambda); }
  Eigen::Matrix2d grad(int t, const Vec3& lambda) const;
};

VelocityField velocity_field(const StreamField& s);

}  // namespace stokes43
