#pragma once

#include "stokes43/tripoly.hpp"

#include <array>

namespace stokes43 {

/// The cubic on K whose weighted L2 pairing picks out values at the local
/// vertex lv: (st, q)_K = (|K|/100) q(V) for every cubic q.  In barycentric
/// coordinates the coefficients do not depend on the triangle geometry.
const TriPoly& sting_local(int lv);

/// Quartic vector bubbles spanning B(K): l1 l2 l3 * {(l_i, 0), (0, l_i)}.
/// Geometry independent in barycentric form.
const std::array<VecPoly, 6>& bubble_basis();

/// Divergences of the bubble basis; spans NS(K).  Depends on K through the
/// barycentric gradients.
std::array<TriPoly, 6> nonsting_basis(const Triangle& K);

struct P3Decomposition {
  TriPoly nonsting;       // orthogonal to stings and constants
  Vec3 sting;             // coefficients of st_{V1 K}, st_{V2 K}, st_{V3 K}
  double constant = 0.0;
};

/// Orthogonal splitting P3(K) = NS(K) + (S(K) + <1>), computed by a 4x4 Gram
/// solve in span{st1, st2, st3, 1} followed by subtraction.
P3Decomposition decompose_p3(const Triangle& K, const TriPoly& q);

}  // namespace stokes43
