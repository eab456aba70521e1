#pragma once

#include "stokes43/mesh.hpp"

#include <iosfwd>
#include <string>

namespace stokes43 {

// Text format: line 1 "nv nt"; nv lines "x y"; nt lines "i j k" (0-based).
// Coordinates are written with 17 significant digits so doubles round-trip.

Triangulation read_mesh(std::istream& in);
Triangulation read_mesh_file(const std::string& path);
void write_mesh(std::ostream& out, const Triangulation& T);
void write_mesh_file(const std::string& path, const Triangulation& T);

}  // namespace stokes43
