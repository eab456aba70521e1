#pragma once

#include "stokes43/mesh.hpp"
#include "stokes43/tripoly.hpp"

#include <vector>

namespace stokes43 {

// Local DOF order on a triangle: for each vertex {value, dx, dy, dxx, dxy,
// dyy}, then the midpoint normal derivative of the edge opposite vertex 0, 1, 2
// (outward normal of this triangle).
inline constexpr int kArgyrisLocalDofs = 21;

struct ArgyrisLocal {
  std::array<TriPoly, kArgyrisLocalDofs> basis;  // degree 5, nodal
};

/// Nodal quintic basis, built from the 21x21 generalized Vandermonde system in
/// centroid-shifted, diameter-scaled coordinates.
ArgyrisLocal local_nodal_basis(const Triangle& K);

enum class DofKind { VertexValue, VertexDx, VertexDy, VertexDxx, VertexDxy, VertexDyy, VertexDnn, EdgeNormal };

struct DofTerm {
  int index;     // global free-DOF index
  double coeff;  // contribution of the global DOF to the local one
};

struct ArgyrisDofMap {
  int n_free = 0;
  std::vector<DofKind> kinds;  // per free DOF
  std::vector<int> entity;     // owning vertex or edge id
  // Derivative DOFs are stored with a length scale (l for first, l^2 for
  // second derivatives) folded into the incidence coefficients, which keeps
  // the stiffness matrix balanced; coeffs[i] holds (derivative / scale[i]).
  std::vector<double> scale;
  // incidence[t][l]: expansion of local DOF l of triangle t over free DOFs;
  // empty for constrained DOFs.
  std::vector<std::array<std::vector<DofTerm>, kArgyrisLocalDofs>> incidence;

  /// Local coefficient vector of triangle t for a global coefficient vector.
  Eigen::Matrix<double, kArgyrisLocalDofs, 1> local_coeffs(int t, const Eigen::VectorXd& x) const;
};

/// Free DOFs realize the H0^2 constraint: interior vertices carry all 6 vertex
/// DOFs, non-corner boundary vertices only the second normal derivative
/// (Hessian rotated to the tangent/normal frame), corners none; interior edge
/// midpoints one normal derivative, boundary midpoints none.
ArgyrisDofMap build_dof_map(const Triangulation& T);

/// Discrete stream function: coefficients over the free DOFs.
struct StreamField {
  const Triangulation* mesh = nullptr;
  const ArgyrisDofMap* dofmap = nullptr;
  Eigen::VectorXd coeffs;

  TriPoly local_quintic(int t) const;
  TriPoly local_quintic(int t, const ArgyrisLocal& basis) const;
};

/// curl of the local quintic: (d phi/dy, -d phi/dx), degree 4, divergence-free
/// by construction.
VecPoly curl_field(const StreamField& s, int t);
VecPoly curl_field(const Triangle& K, const TriPoly& quintic);

}  // namespace stokes43
