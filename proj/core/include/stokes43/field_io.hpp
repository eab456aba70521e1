#pragma once

#include "stokes43/pressure.hpp"

#include <iosfwd>

namespace stokes43 {

/// One line per triangle in mesh order: the 10 cubic coefficients, 17
/// significant digits.
void write_pressure_field(std::ostream& os, const PressureField& p);

/// Two lines per triangle: 15 quartic coefficients of the x component, then of
/// the y component.
void write_velocity_field(std::ostream& os, const VelocityField& u);

/// Unstructured-grid XML file sampling both fields on a uniform lattice over
/// the mesh bounding box; lattice points outside the mesh carry zeros.
void write_vtu(std::ostream& os, const Triangulation& T, const VelocityField& u,
               const PressureField& p, int cells_per_side = 100);

}  // namespace stokes43
