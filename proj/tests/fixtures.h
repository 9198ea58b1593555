#pragma once

#include <cstdint>

#include "localizer/geom.h"

namespace localizer::fixtures {

Workspace unit_square();
/// Unit square with a centred square hole of side 1/5.
Workspace square_with_hole();
Workspace triangle_345();
Workspace right_triangle();
/// Regular n-gon inscribed in the unit circle; antipodal vertices are exact negatives.
Workspace regular_polygon(int n);
/// Corridor with three identical 6x6 rooms, each translated by 10 along x.
Workspace three_rooms();
/// Triangle whose left side is replaced by a zigzag of `spikes` reflex tips.
Workspace spiky_triangle(int spikes);
/// Star-shaped simple polygon with rational coordinates.
Workspace random_polygon(std::uint64_t seed, int n);

/// Edge ids of the hypotenuse and the base of spiky_triangle.
constexpr int kSpikyBase = 0;
constexpr int kSpikyHypotenuse = 1;

Scalar rationalize(double v, long denom = 1 << 16);

}  // namespace localizer::fixtures
