#pragma once

#include <vector>

#include "kakeya/polytope.hpp"

namespace kakeya {

/* Convex hull of a 2D point set, counter-clockwise, strictly convex
 * (collinear interior points dropped).  Degenerate inputs yield the two
 * extreme points of a segment or a single point. */
std::vector<Vec<2>> convex_hull_2d(std::vector<Vec<2>> pts);

double cross2(const Vec<2>& a, const Vec<2>& b);

/* Halfspace rows from the hull of the given vertices.  Segments and single
 * points are encoded with equality pairs of rows. */
HPolytope<2> v_to_h_2d(const VPolytope<2>& vp);

/* Vertex enumeration for a bounded 2D H-polytope.  Full-dimensional bodies
 * go through the polar dual (a single convex-hull call around the inball
 * center); bodies thinner than ~1e-9 fall back to pairwise line
 * intersections.  Throws EmptyBody / Unbounded. */
VPolytope<2> h_to_v_2d(const HPolytope<2>& hp);

}  // namespace kakeya
