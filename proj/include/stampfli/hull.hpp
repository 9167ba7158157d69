#pragma once

#include <vector>

#include "stampfli/matrix.hpp"

namespace stampfli {

/// Convex hull of points in C (monotone chain), counterclockwise, no
/// duplicate endpoint. Collinear inputs collapse to the extreme pair.
std::vector<Complex> convex_hull(std::vector<Complex> pts);

/// Signed distance of p to the hull: positive inside (distance to the
/// boundary), negative outside. Degenerate hulls (point, segment) have empty
/// interior, so the result is never positive for them.
double hull_signed_distance(const std::vector<Complex>& hull, Complex p);

}  // namespace stampfli
