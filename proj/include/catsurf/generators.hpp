#pragma once

#include <cstdint>

#include "catsurf/polyhedral.hpp"

namespace catsurf::gen {

// Regular flat tetrahedron: 4 equilateral faces of the given side.
PolySurface tetrahedron(double side = 1.0);

// The unit sphere cut along the coordinate planes: 8 spherical octant
// faces (kappa = 1, all sides pi/2), 6 smooth vertices.
PolySurface octant_octahedron();

// Cube surface of the given side, each square face split by a diagonal;
// 8 cone vertices of angle 3*pi/2.
PolySurface cube_corner(double side = 1.0);

// Regular flat icosahedron with the given side.
PolySurface icosahedron(double side = 1.0);

// Icosahedron with vertex radii jittered by up to `amount` (relative),
// still convex for small amounts; flat faces with lengths from the
// embedding. Deterministic in `seed`.
PolySurface perturbed_icosahedron(std::uint64_t seed, double amount = 0.08);

}  // namespace catsurf::gen
