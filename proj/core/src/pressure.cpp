#include "stokes43/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace stokes43 {

namespace {

VecPoly scaled(const TriPoly& w, const Vec2& xi) { return {w * xi.x(), w * xi.y()}; }

// (f, w xi) - (grad u_h, grad(w xi)) - (p^NS, div(w xi)) over the pair support.
double pair_rhs(const Triangulation& T, const PressureComponents& comps, const VelocityField& u_h,
                const LoadFunctional& load, const PairTestFunction& w, const Vec2& xi) {
  double r = 0;
  const int tri[2] = {w.t0, w.t1};
  const TriPoly* ws[2] = {&w.w0, &w.w1};
  for (int s = 0; s < 2; ++s) {
    const Triangle K = T.triangle(tri[s]);
    const VecPoly v = scaled(*ws[s], xi);
    r += load(tri[s], v);
    r -= grad_inner_product(K, u_h.polys[tri[s]], v);
    r -= inner_product(K, comps.nonsting[tri[s]], v.divergence(K));
  }
  return r;
}

// (st_{V, K_side}, div(w xi)) on one side of the pair.
double sting_pair_entry(const Triangulation& T, int vertex, const PairTestFunction& w, int side,
                        const Vec2& xi) {
  const int t = side ? w.t1 : w.t0;
  const TriPoly& ww = side ? w.w1 : w.w0;
  const Triangle K = T.triangle(t);
  const TriPoly& st = sting_local(T.local_index(t, vertex));
  return inner_product(K, st, scaled(ww, xi).divergence(K));
}

// Closed form of the same entry from the pinned gradient of w at the vertex:
// (st, div(w xi))_K = |K|/100 * xi . grad w(V), grad w(V) = +-(l0/2|K|) rot(W-V).
double sting_pair_entry_closed(const Triangulation& T, const VertexPatch& patch, int j, int side,
                               const Vec2& xi) {
  const auto [ta, tb] = patch.edge_tris(j);
  const int t = side ? tb : ta;
  // Third vertex: the one that is neither the patch vertex nor the far vertex.
  int w = -1;
  for (int k = 0; k < 3; ++k)
    if (T.cells[t][k] != patch.vertex && T.cells[t][k] != patch.far[j]) w = T.cells[t][k];
  const Vec2 d = T.nodes[w] - T.nodes[patch.vertex];
  const Vec2 rot(-d.y(), d.x());
  const double sign = side ? -1.0 : 1.0;
  return sign * (patch.lens[j] / 200.0) * xi.dot(rot);
}

void fill_pair_rows(const Triangulation& T, const VertexPatch& patch,
                    const PressureComponents& comps, const VelocityField& u_h,
                    const LoadFunctional& load, int j, const Vec2& xi, int row, StingSystem& sys) {
  const PairTestFunction w = patch_test_function(T, patch, j);
  const int J = patch.J();
  const int c0 = j, c1 = (j + 1) % J;
  const double e0 = sting_pair_entry(T, patch.vertex, w, 0, xi);
  const double e1 = sting_pair_entry(T, patch.vertex, w, 1, xi);
  const double f0 = sting_pair_entry_closed(T, patch, j, 0, xi);
  const double f1 = sting_pair_entry_closed(T, patch, j, 1, xi);
  const double tol = 1e-10 * (patch.lens[j] * patch.lens[j] + std::abs(f0) + std::abs(f1));
  if (std::abs(e0 - f0) > tol || std::abs(e1 - f1) > tol)
    throw InternalError("sting system: closed-form entry cross-check failed");
  sys.matrix(row, c0) += e0;
  sys.matrix(row, c1) += e1;
  sys.rhs[row] = pair_rhs(T, comps, u_h, load, w, xi);
}

void solve_sting(StingSystem& sys, bool require_full_rank) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.matrix, Eigen::ComputeThinU | Eigen::ComputeThinV);
  sys.singular_values = svd.singularValues();
  const double smax = sys.singular_values.size() ? sys.singular_values.maxCoeff() : 0.0;
  const double smin = sys.singular_values.size() ? sys.singular_values.minCoeff() : 0.0;
  if (require_full_rank && !(smin > 1e-10 * smax))
    throw InternalError("sting system: rank deficiency at a regular vertex");
  sys.alpha = svd.solve(sys.rhs);
  sys.residual = (sys.matrix * sys.alpha - sys.rhs).norm();
}

}  // namespace

PressureComponents::PressureComponents(const Triangulation& T) : mesh(&T) {
  nonsting.resize(T.n_triangles());
  sting.resize(T.n_vertices());
  phase.assign(T.n_vertices(), StingPhase::Unset);
}

void PressureComponents::set_sting(int v, std::vector<double> alpha, StingPhase ph) {
  if (alpha.size() != mesh->fans[v].size())
    throw InternalError("set_sting: coefficient count does not match the fan");
  sting[v] = std::move(alpha);
  phase[v] = ph;
}

double PressureComponents::sting_on(int v, int t) const {
  if (phase[v] == StingPhase::Unset)
    throw InternalError("sting_on: coefficient read before its phase completed");
  const auto& fan = mesh->fans[v];
  for (size_t j = 0; j < fan.size(); ++j)
    if (fan[j] == t) return sting[v][j];
  throw InternalError("sting_on: triangle not in the vertex fan");
}

double PressureField::mean() const {
  double sum = 0, area = 0;
  for (int t = 0; t < mesh->n_triangles(); ++t) {
    const Triangle K = mesh->triangle(t);
    sum += polys[t].integral(K);
    area += K.area();
  }
  return sum / area;
}

TriPoly nonsting_component(const Triangulation& T, int t, const VelocityField& u_h,
                          const LoadFunctional& load) {
  const Triangle K = T.triangle(t);
  const auto& bubbles = bubble_basis();
  const auto ns = nonsting_basis(K);

  Eigen::Matrix<double, 6, 6> G;
  Eigen::Matrix<double, 6, 1> rhs;
  for (int i = 0; i < 6; ++i) {
    for (int j = i; j < 6; ++j) {
      G(i, j) = inner_product(K, ns[i], ns[j]);
      G(j, i) = G(i, j);
    }
    rhs[i] = load(t, bubbles[i]) - grad_inner_product(K, u_h.polys[t], bubbles[i]);
  }
  Eigen::LLT<Eigen::Matrix<double, 6, 6>> llt(G);
  if (llt.info() != Eigen::Success)
    throw InternalError("nonsting_component: Gram matrix not positive definite");
  const Eigen::Matrix<double, 6, 1> x = llt.solve(rhs);

  TriPoly out = TriPoly::zero(3, t);
  for (int i = 0; i < 6; ++i) out += ns[i] * x[i];
  out.set_tri(t);
  return out;
}

StingSystem sting_regular(const Triangulation& T, const VertexPatch& patch,
                          const PressureComponents& comps, const VelocityField& u_h,
                          const LoadFunctional& load) {
  const int J = patch.J(), Jt = patch.Jt();
  StingSystem sys;
  sys.vertex = patch.vertex;
  sys.matrix = Eigen::MatrixXd::Zero(2 * Jt, J);
  sys.rhs = Eigen::VectorXd::Zero(2 * Jt);
  for (int j = 0; j < Jt; ++j) {
    const Vec2 tv = patch.tangents[j];
    const Vec2 tp(-tv.y(), tv.x());
    fill_pair_rows(T, patch, comps, u_h, load, j, tv, j, sys);
    fill_pair_rows(T, patch, comps, u_h, load, j, tp, Jt + j, sys);
  }
  solve_sting(sys, /*require_full_rank=*/true);
  return sys;
}

StingSystem sting_nearly_singular(const Triangulation& T, const VertexPatch& patch,
                                  const PressureComponents& comps, const VelocityField& u_h,
                                  const LoadFunctional& load) {
  const int J = patch.J(), Jt = patch.Jt();
  StingSystem sys;
  sys.vertex = patch.vertex;
  sys.matrix = Eigen::MatrixXd::Zero(2 * Jt, J);
  sys.rhs = Eigen::VectorXd::Zero(2 * Jt);
  const TriPoly zero3 = TriPoly::zero(3);
  for (int j = 0; j < Jt; ++j) {
    fill_pair_rows(T, patch, comps, u_h, load, j, patch.tangents[j], j, sys);

    // Jump equation: the far vertex is regular and already solved.
    const int vj = patch.far[j];
    if (comps.phase[vj] != StingPhase::Regular)
      throw InternalError("sting_nearly_singular: fan neighbor is not a solved regular vertex");
    const auto [ta, tb] = patch.edge_tris(j);
    const TriPoly& sta = sting_local(T.local_index(ta, patch.vertex));
    const TriPoly& stb = sting_local(T.local_index(tb, patch.vertex));
    const double e0 = jump_tangential(T, patch, j, sta, zero3);
    const double e1 = jump_tangential(T, patch, j, zero3, stb);
    const double l2 = patch.lens[j] * patch.lens[j];
    if (std::abs(e0 + 6.0 * l2) > 1e-12 * 6.0 * l2 || std::abs(e1 - 6.0 * l2) > 1e-12 * 6.0 * l2)
      throw InternalError("sting system: jump closed-form cross-check failed");
    sys.matrix(Jt + j, j) += e0;
    sys.matrix(Jt + j, (j + 1) % J) += e1;

    const TriPoly qa =
        comps.nonsting[ta] + comps.sting_on(vj, ta) * sting_local(T.local_index(ta, vj));
    const TriPoly qb =
        comps.nonsting[tb] + comps.sting_on(vj, tb) * sting_local(T.local_index(tb, vj));
    sys.rhs[Jt + j] = -jump_tangential(T, patch, j, qa, qb);
  }
  solve_sting(sys, /*require_full_rank=*/false);
  return sys;
}

double sting_dead_corner(const Triangulation& T, int dead_vertex,
                         const PressureComponents& comps) {
  const DeadCornerGeom g = dead_corner_geometry(T, dead_vertex);
  const TriPoly zero3 = TriPoly::zero(3);

  const double denom =
      jump_normal_corner(T, g, sting_local(T.local_index(g.k1, dead_vertex)), zero3);
  const double expected = -(9.0 / 5.0) * g.ell * g.ell;
  if (std::abs(denom - expected) > 1e-12 * std::abs(expected))
    throw InternalError("sting_dead_corner: jump closed-form cross-check failed");

  TriPoly q1 = comps.nonsting[g.k1];
  for (int v : {g.w1, g.w2})
    q1 += comps.sting_on(v, g.k1) * sting_local(T.local_index(g.k1, v));
  TriPoly qk = comps.nonsting[g.k];
  for (int v : {g.w1, g.w2, g.w3})
    qk += comps.sting_on(v, g.k) * sting_local(T.local_index(g.k, v));

  return -jump_normal_corner(T, g, q1, qk) / denom;
}

std::vector<double> constant_component(const Triangulation& T, const PressureComponents& comps,
                                       const VelocityField& u_h, const LoadFunctional& load,
                                       int partitions, double* max_cycle_error) {
  const int nT = T.n_triangles();
  if (partitions < 1) partitions = 1;
  partitions = std::min(partitions, nT);

  // Per-edge differences C_{t0} - C_{t1}.  The audit scale is the magnitude
  // of the functional evaluations before cancellation: each difference is a
  // sum of O(h^-1)-sized inner products that nearly cancel, so that sum, not
  // the difference itself, bounds the attainable floating-point accuracy.
  std::vector<double> delta(T.n_edges(), 0.0);
  double scale = 0.0;
  for (int e = 0; e < T.n_edges(); ++e) {
    if (T.edges[e].boundary()) continue;
    const EdgePairTestFunction v = edge_pair_test_function(T, e);
    const Triangle K0 = T.triangle(v.t0), K1 = T.triangle(v.t1);
    const double terms[6] = {load(v.t0, v.v0),
                             load(v.t1, v.v1),
                             -grad_inner_product(K0, u_h.polys[v.t0], v.v0),
                             -grad_inner_product(K1, u_h.polys[v.t1], v.v1),
                             -inner_product(K0, comps.nonsting[v.t0], v.v0.divergence(K0)),
                             -inner_product(K1, comps.nonsting[v.t1], v.v1.divergence(K1))};
    double d = 0.0, mag = 0.0;
    for (const double t : terms) {
      d += t;
      mag += std::abs(t);
    }
    delta[e] = d;
    scale = std::max(scale, mag);
  }
  scale = std::max(scale, 1e-300);

  const auto part = [&](int t) {
    return static_cast<int>(static_cast<long long>(t) * partitions / nT);
  };

  // Breadth-first trees inside each partition; disconnected pieces become
  // separate components reconciled afterwards.
  std::vector<double> D(nT, 0.0);
  std::vector<int> comp(nT, -1);
  std::vector<char> tree_edge(T.n_edges(), 0);
  int n_comp = 0;
  for (int root = 0; root < nT; ++root) {
    if (comp[root] >= 0) continue;
    const int c = n_comp++;
    comp[root] = c;
    D[root] = 0.0;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int t = q.front();
      q.pop();
      for (int e : T.cell_edges[t]) {
        const Edge& ed = T.edges[e];
        if (ed.boundary()) continue;
        const int nb = (ed.t0 == t) ? ed.t1 : ed.t0;
        if (comp[nb] >= 0 || part(nb) != part(root)) continue;
        comp[nb] = c;
        D[nb] = (ed.t0 == t) ? D[t] - delta[e] : D[t] + delta[e];
        tree_edge[e] = 1;
        q.push(nb);
      }
    }
  }

  // Reconcile component anchors through the first shared edge found by a
  // breadth-first sweep over the component graph.
  std::vector<double> offset(n_comp, 0.0);
  std::vector<char> comp_done(n_comp, 0);
  comp_done[comp[0]] = 1;
  {
    std::vector<std::vector<int>> comp_edges(n_comp);
    for (int e = 0; e < T.n_edges(); ++e) {
      const Edge& ed = T.edges[e];
      if (ed.boundary() || comp[ed.t0] == comp[ed.t1]) continue;
      comp_edges[comp[ed.t0]].push_back(e);
      comp_edges[comp[ed.t1]].push_back(e);
    }
    std::queue<int> q;
    q.push(comp[0]);
    while (!q.empty()) {
      const int c = q.front();
      q.pop();
      for (int e : comp_edges[c]) {
        const Edge& ed = T.edges[e];
        const int other = (comp[ed.t0] == c) ? comp[ed.t1] : comp[ed.t0];
        if (comp_done[other]) continue;
        // C_{t0} - C_{t1} = delta: solve for the other component's offset.
        if (comp[ed.t0] == c)
          offset[other] = (D[ed.t0] + offset[c]) - delta[e] - D[ed.t1];
        else
          offset[other] = (D[ed.t1] + offset[c]) + delta[e] - D[ed.t0];
        comp_done[other] = 1;
        tree_edge[e] = 1;
        q.push(other);
      }
    }
    for (int c = 0; c < n_comp; ++c)
      if (!comp_done[c]) throw InternalError("constant_component: disconnected dual graph");
  }
  for (int t = 0; t < nT; ++t) D[t] += offset[comp[t]];

  // Path-independence audit over all non-tree interior edges.
  double worst = 0.0;
  for (int e = 0; e < T.n_edges(); ++e) {
    const Edge& ed = T.edges[e];
    if (ed.boundary() || tree_edge[e]) continue;
    worst = std::max(worst, std::abs(D[ed.t0] - D[ed.t1] - delta[e]));
  }
  if (max_cycle_error) *max_cycle_error = worst;
  if (worst > 1e-10 * scale) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "constant_component: cycle audit failed, path-dependent differences "
                  "(worst %.3e, delta scale %.3e)", worst, scale);
    throw InternalError(buf);
  }

  // Shift to zero area-weighted mean.
  double num = 0.0, den = 0.0;
  for (int t = 0; t < nT; ++t) {
    const double a = T.triangle(t).area();
    num += D[t] * a;
    den += a;
  }
  const double shift = num / den;
  for (double& d : D) d -= shift;
  return D;
}

PressureField assemble_pressure(PressureComponents& comps) {
  const Triangulation& T = *comps.mesh;
  for (int v = 0; v < T.n_vertices(); ++v)
    if (comps.phase[v] == StingPhase::Unset)
      throw InternalError("assemble_pressure: sting coefficients missing");
  if (static_cast<int>(comps.constants.size()) != T.n_triangles())
    throw InternalError("assemble_pressure: constant component missing");

  // m(p^ST) from the exact sting integral |K|/100.
  double msum = 0.0, area = 0.0;
  for (int t = 0; t < T.n_triangles(); ++t) area += T.triangle(t).area();
  for (int v = 0; v < T.n_vertices(); ++v) {
    const auto& fan = T.fans[v];
    for (size_t j = 0; j < fan.size(); ++j)
      msum += comps.sting[v][j] * T.triangle(fan[j]).area() / 100.0;
  }
  comps.sting_mean = msum / area;

  PressureField p;
  p.mesh = &T;
  p.polys.reserve(T.n_triangles());
  for (int t = 0; t < T.n_triangles(); ++t) {
    TriPoly q = comps.nonsting[t];
    for (int i = 0; i < 3; ++i) {
      const int v = T.cells[t][i];
      q += comps.sting_on(v, t) * sting_local(i);
    }
    q += TriPoly::constant(3, comps.constants[t] - comps.sting_mean);
    q.set_tri(t);
    p.polys.push_back(std::move(q));
  }
  return p;
}

PressureComponents recover_components(const Triangulation& T,
                                      const std::vector<VertexClassification>& classes,
                                      const VelocityField& u_h, const LoadFunctional& load,
                                      RecoveryDiagnostics* diag, int partitions) {
  if (static_cast<int>(classes.size()) != T.n_vertices())
    throw InternalError("recover_components: classification size mismatch");
  const ValidationReport report = validate(T, classes);
  if (!report.admissible())
    throw ValidationError("recover_components: a triangle touches two domain corners");
  if (!report.consistent())
    throw InternalError("recover_components: adjacent nearly singular vertices");

  PressureComponents comps(T);
  for (int t = 0; t < T.n_triangles(); ++t)
    comps.nonsting[t] = nonsting_component(T, t, u_h, load);

  RecoveryDiagnostics d;
  d.min_regular_singular_value = std::numeric_limits<double>::infinity();

  std::vector<VertexPatch> patches(T.n_vertices());
  for (int v = 0; v < T.n_vertices(); ++v) patches[v] = vertex_patch(T, v);

  for (int v = 0; v < T.n_vertices(); ++v) {
    if (classes[v].cls != VertexClass::Regular) continue;
    StingSystem sys = sting_regular(T, patches[v], comps, u_h, load);
    d.min_regular_singular_value =
        std::min(d.min_regular_singular_value, sys.singular_values.minCoeff());
    d.max_ls_residual = std::max(d.max_ls_residual, sys.residual);
    comps.set_sting(v, {sys.alpha.data(), sys.alpha.data() + sys.alpha.size()},
                    StingPhase::Regular);
  }
  for (int v = 0; v < T.n_vertices(); ++v) {
    if (classes[v].cls != VertexClass::NearlySingular) continue;
    StingSystem sys = sting_nearly_singular(T, patches[v], comps, u_h, load);
    d.max_ls_residual = std::max(d.max_ls_residual, sys.residual);
    comps.set_sting(v, {sys.alpha.data(), sys.alpha.data() + sys.alpha.size()},
                    StingPhase::NearlySingular);
  }
  for (int v = 0; v < T.n_vertices(); ++v) {
    if (classes[v].cls != VertexClass::DeadCorner) continue;
    comps.set_sting(v, {sting_dead_corner(T, v, comps)}, StingPhase::DeadCorner);
  }

  comps.constants = constant_component(T, comps, u_h, load, partitions, &d.max_cycle_error);
  if (diag) *diag = d;
  return comps;
}

PressureField recover_pressure(const Triangulation& T,
                               const std::vector<VertexClassification>& classes,
                               const VelocityField& u_h, const LoadFunctional& load,
                               RecoveryDiagnostics* diag) {
  PressureComponents comps = recover_components(T, classes, u_h, load, diag);
  return assemble_pressure(comps);
}

}  // namespace stokes43
