#pragma once

/* Shared fixture bodies for the unit and acceptance suites. */

#include <cmath>
#include <vector>

#include "kakeya/hull2d.hpp"
#include "kakeya/polytope.hpp"

namespace bodies {

using namespace kakeya;

inline VPolytope<2> regular_ngon(int n, double radius = 1.0,
                                 Vec<2> center = vec2(0, 0)) {
  std::vector<Vec<2>> pts;
  pts.reserve(size_t(n));
  for (int i = 0; i < n; ++i) {
    double a = 2 * std::acos(-1.0) * double(i) / double(n);
    pts.push_back(center + vec2(radius * std::cos(a), radius * std::sin(a)));
  }
  return VPolytope<2>(pts);
}

/* Disk stand-ins.  256 sides keeps the polygon's own symmetry group rich
 * enough that exact placement formulas survive; 4096 sides approximates
 * the disk to ~3e-7 for tests that need rotation invariance generically. */
inline HPolytope<2> disk256() { return v_to_h_2d(regular_ngon(256)); }
inline HPolytope<2> disk4096() { return v_to_h_2d(regular_ngon(4096)); }

inline HPolytope<2> box(double hx, double hy, Vec<2> c = vec2(0, 0)) {
  return HPolytope<2>::from_rows({{vec2(1, 0), c[0] + hx},
                                  {vec2(-1, 0), -c[0] + hx},
                                  {vec2(0, 1), c[1] + hy},
                                  {vec2(0, -1), -c[1] + hy}});
}

/* Polygonal constant-width-style body: hull of the three unit arcs of a
 * width-1 rotor (each arc centred at the opposite corner of an equilateral
 * triangle of side 1), inflated slightly about its centroid so that every
 * direction still admits a unit chord after the arcs are flattened into
 * chains of chords. */
inline HPolytope<2> rotor_hull(int pts_per_arc = 64, double inflate = 1e-3) {
  const double pi = std::acos(-1.0);
  Vec<2> corner[3] = {vec2(0, 0), vec2(1, 0), vec2(0.5, std::sqrt(3.0) / 2)};
  std::vector<Vec<2>> pts;
  for (int c = 0; c < 3; ++c) {
    /* arc opposite corner c spans 60 degrees between the other corners */
    Vec<2> from = corner[(c + 1) % 3] - corner[c];
    double a0 = std::atan2(from[1], from[0]);
    for (int i = 0; i <= pts_per_arc; ++i) {
      double a = a0 + (pi / 3) * double(i) / double(pts_per_arc);
      pts.push_back(corner[c] + vec2(std::cos(a), std::sin(a)));
    }
  }
  VPolytope<2> hull(convex_hull_2d(pts));
  Vec<2> centroid = hull.centroid();
  std::vector<Vec<2>> scaled;
  for (const auto& p : hull.vertices)
    scaled.push_back(centroid + (p - centroid) * (1.0 + inflate));
  return v_to_h_2d(VPolytope<2>(scaled));
}

/* Fixed lopsided heptagon containing the radius-0.3 disk. */
inline HPolytope<2> heptagon() {
  std::vector<Vec<2>> pts = {vec2(1.1, 0.1),   vec2(0.6, 0.9),
                             vec2(-0.3, 1.05), vec2(-1.2, 0.4),
                             vec2(-0.9, -0.7), vec2(0.05, -1.15),
                             vec2(0.85, -0.6)};
  return v_to_h_2d(VPolytope<2>(convex_hull_2d(pts)));
}

inline Segment<2> unit_stick() {
  return Segment<2>(vec2(0, 0), Direction<2>(vec2(1, 0)), 1.0);
}

/* Small triangular probe inside the radius-0.05 disk around the origin. */
inline VPolytope<2> small_triangle() {
  return VPolytope<2>({vec2(0.05, 0), vec2(-0.03, 0.035), vec2(-0.02, -0.04)});
}

}  // namespace bodies
