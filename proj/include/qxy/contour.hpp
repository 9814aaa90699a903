#pragma once

#include <functional>
#include <vector>

#include "qxy/grid.hpp"
#include "qxy/spectrum.hpp"

namespace qxy {

// Scalar field over the plane, called as f(axis1_value, axis2_value).
using FieldFunction = std::function<double(double, double)>;

// Extracts the zero level set of a sampled field by marching squares over
// the grid cells. `values` holds f sampled at the axis nodes (row-major,
// axis1 outer, same layout as Grid2D). Each sign-change edge crossing is
// refined by bisection on the true function f along that grid edge until
// |f| <= tol, so every returned point genuinely lies on the level set, not
// on a linear interpolant. Segments are stitched into ordered polylines;
// closed loops repeat their first point at the end.
//
// Conventions: a node value of exactly zero counts as positive, so contours
// through nodes are still detected on the adjacent sign-change edges.
// Ambiguous saddle cells are disambiguated by evaluating f at the cell
// center. A constant-sign field yields an empty result.
//
// Throws std::invalid_argument if either axis count is < 2, the value array
// does not match the axis counts, or any value is non-finite.
std::vector<Polyline> extract_zero_contour(const std::vector<double>& values,
                                           const Axis& axis1,
                                           const Axis& axis2,
                                           const FieldFunction& f,
                                           double tol = 1e-9);

// Zero contour of a computed energy-gap grid: the level-crossing locus in
// the grid's parameter plane. Bisection re-evaluates the analytic gap with
// the grid's fixed parameters, so the refined points satisfy the on-locus
// bound |gap| <= 1e-9. Throws std::invalid_argument if the grid does not
// hold the gap quantity.
CrossingLocus crossing_locus_grid(const Grid2D& field);

}  // namespace qxy
