#pragma once

#include <array>
#include <vector>

#include "kakeya/polytope.hpp"

namespace kakeya {

struct Hull3D {
  std::vector<Vec<3>> vertices;          /* points of the input on the hull */
  std::vector<std::array<int, 3>> faces; /* outward-oriented triangles */
  int rank = 3;                          /* affine rank of the input */
};

/* Convex hull of a 3D point cloud (quickhull with conflict lists).  Points
 * within ~1e-10 of a face are absorbed, so every input point lies in the
 * result within 1e-9 at unit scale.  Degenerate inputs come back with
 * rank < 3: a CCW polygon ring in its plane, a segment's endpoints, or a
 * single point, with no faces. */
Hull3D convex_hull_3d(const std::vector<Vec<3>>& pts);

/* Face planes as halfspace rows (best-effort deduplication of coplanar
 * triangles).  Requires rank 3. */
HPolytope<3> hull3d_hrep(const Hull3D& h);

}  // namespace kakeya
