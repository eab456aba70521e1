#pragma once

#include "stokes43/patch.hpp"
#include "stokes43/sting.hpp"
#include "stokes43/velocity.hpp"

namespace stokes43 {

/// Sting solves run in three ordered phases; coefficients may only be read
/// after their vertex's phase has completed.
enum class StingPhase { Unset, Regular, NearlySingular, DeadCorner };

/// One vertex's least-squares system for the sting coefficients over its fan.
struct StingSystem {
  int vertex = -1;
  Eigen::MatrixXd matrix;  // 2*Jt rows, J columns
  Eigen::VectorXd rhs;
  Eigen::VectorXd singular_values;
  Eigen::VectorXd alpha;  // solution, fan order
  double residual = 0;    // |A alpha - rhs|
};

struct PressureComponents {
  const Triangulation* mesh = nullptr;
  std::vector<TriPoly> nonsting;           // per triangle, degree 3
  std::vector<std::vector<double>> sting;  // per vertex, fan order
  std::vector<StingPhase> phase;           // per vertex
  std::vector<double> constants;           // per triangle, area-weighted mean zero
  double sting_mean = 0;                   // m(p^ST), set by assemble_pressure

  explicit PressureComponents(const Triangulation& T);
  PressureComponents() = default;

  void set_sting(int v, std::vector<double> alpha, StingPhase ph);
  /// Coefficient of vertex v's sting on triangle t; throws on out-of-phase reads.
  double sting_on(int v, int t) const;
};

struct PressureField {
  const Triangulation* mesh = nullptr;
  std::vector<TriPoly> polys;  // per triangle, degree 3

  double eval(int t, const Vec3& lambda) const { return polys[t](lambda); }
  double mean() const;
};

/// The component of the local pressure in NS(K): 6x6 Gram solve of
/// (p, div b) = load(b) - (grad u_h, grad b) over the vector bubbles b.
TriPoly nonsting_component(const Triangulation& T, int t, const VelocityField& u_h,
                           const LoadFunctional& load);

/// Sting coefficients at a regular vertex: least squares over the tangential
/// and rotated pair-test-function equations, one pair per interior fan edge.
StingSystem sting_regular(const Triangulation& T, const VertexPatch& patch,
                          const PressureComponents& comps, const VelocityField& u_h,
                          const LoadFunctional& load);

/// Sting coefficients at a nearly singular vertex: the rotated equations are
/// replaced by tangential-derivative jump equations driven by the already
/// solved regular neighbors.
StingSystem sting_nearly_singular(const Triangulation& T, const VertexPatch& patch,
                                  const PressureComponents& comps, const VelocityField& u_h,
                                  const LoadFunctional& load);

/// Sting coefficient at a dead corner: one normal-derivative jump across the
/// edge facing the corner, divided by the jump of the corner's own sting.
double sting_dead_corner(const Triangulation& T, int dead_vertex, const PressureComponents& comps);

/// Per-triangle constants from edge-pair test functions: differences along a
/// breadth-first spanning tree of the dual graph, then shifted to a zero
/// area-weighted mean.  Non-tree edges audit path independence.  With
/// partitions > 1 each partition is traversed from its own anchor and the
/// anchors are reconciled through shared edges.
std::vector<double> constant_component(const Triangulation& T, const PressureComponents& comps,
                                       const VelocityField& u_h, const LoadFunctional& load,
                                       int partitions = 1, double* max_cycle_error = nullptr);

/// p_h = p^NS + p^ST + p^CC - m(p^ST); also stores m(p^ST) in comps.
PressureField assemble_pressure(PressureComponents& comps);

struct RecoveryDiagnostics {
  double min_regular_singular_value = 0;  // smallest over all regular vertices
  double max_ls_residual = 0;
  double max_cycle_error = 0;
};

/// Full recovery pipeline: non-sting, then regular / nearly singular / dead
/// corner stings in phase order, constants, assembly.
PressureComponents recover_components(const Triangulation& T,
                                      const std::vector<VertexClassification>& classes,
                                      const VelocityField& u_h, const LoadFunctional& load,
                                      RecoveryDiagnostics* diag = nullptr, int partitions = 1);

PressureField recover_pressure(const Triangulation& T,
                               const std::vector<VertexClassification>& classes,
                               const VelocityField& u_h, const LoadFunctional& load,
                               RecoveryDiagnostics* diag = nullptr);

}  // namespace stokes43
