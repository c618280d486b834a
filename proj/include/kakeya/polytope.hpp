#pragma once

#include <algorithm>
#include <vector>

#include "kakeya/geometry.hpp"

namespace kakeya {

/* One inequality <normal, x> <= offset.  HPolytope normalizes rows to unit
 * normals at construction, so a row's slack at a point is its Euclidean
 * distance to the bounding hyperplane.  Margin / slack numbers throughout
 * the library rely on this convention. */
template <int N>
struct Halfspace {
  Vec<N> normal;
  double offset = 0;
};

template <int N>
struct HPolytope {
  std::vector<Halfspace<N>> rows;

  HPolytope() = default;

  static HPolytope from_rows(std::vector<Halfspace<N>> hs) {
    HPolytope p;
    p.rows.reserve(hs.size());
    for (auto& h : hs) {
      if (!is_finite(h.normal) || !std::isfinite(h.offset))
        fail("DomainError", "halfspace has non-finite entries");
      double n = norm(h.normal);
      if (n < 1e-12) fail("DomainError", "halfspace normal is zero");
      p.rows.push_back({h.normal * (1.0 / n), h.offset / n});
    }
    return p;
  }

  int size() const { return (int)rows.size(); }

  /* Smallest row slack; negative when p violates some inequality. */
  double slack(const Vec<N>& p) const {
    double s = std::numeric_limits<double>::infinity();
    for (const auto& h : rows) s = std::min(s, h.offset - dot(h.normal, p));
    return s;
  }

  bool contains(const Vec<N>& p, double tol = kTol) const {
    for (const auto& h : rows)
      if (dot(h.normal, p) - h.offset > tol) return false;
    return true;
  }

  HPolytope translated(const Vec<N>& t) const {
    HPolytope p = *this;
    for (auto& h : p.rows) h.offset += dot(h.normal, t);
    return p;
  }

  HPolytope rotated(const Rotation<N>& r) const {
    HPolytope p = *this;
    for (auto& h : p.rows) h.normal = r.apply(h.normal);
    return p;
  }

  HPolytope scaled_about(const Vec<N>& c, double f) const {
    if (!(f > 0)) fail("DomainError", "scale factor must be positive");
    HPolytope p = *this;
    for (auto& h : p.rows) h.offset = dot(h.normal, c) + f * (h.offset - dot(h.normal, c));
    return p;
  }

  /* Rows whose slack at x is at most `radius`.  The result describes the
   * same set as *this inside the ball B(x, radius) only; it is a local
   * view used to speed up repeated queries on a small region. */
  HPolytope rows_near(const Vec<N>& x, double radius) const {
    HPolytope p;
    for (const auto& h : rows)
      if (h.offset - dot(h.normal, x) <= radius) p.rows.push_back(h);
    if (p.rows.empty() && !rows.empty()) p.rows.push_back(rows[0]);
    return p;
  }
};

template <int N>
struct VPolytope {
  std::vector<Vec<N>> vertices;

  VPolytope() = default;
  explicit VPolytope(std::vector<Vec<N>> vs) : vertices(std::move(vs)) {
    if (vertices.empty()) fail("DomainError", "vertex set is empty");
    for (const auto& v : vertices)
      if (!is_finite(v)) fail("DomainError", "vertex has non-finite entries");
  }

  int size() const { return (int)vertices.size(); }

  VPolytope translated(const Vec<N>& t) const {
    VPolytope p = *this;
    for (auto& v : p.vertices) v += t;
    return p;
  }

  VPolytope rotated(const Rotation<N>& r) const {
    VPolytope p = *this;
    for (auto& v : p.vertices) v = r.apply(v);
    return p;
  }

  Vec<N> centroid() const {
    Vec<N> c{};
    for (const auto& v : vertices) c += v;
    return c * (1.0 / vertices.size());
  }
};

/* Support function h(d) = max over the body of <d, x>; exact for V-rep
 * bodies and segments.  The H-rep overload lives in linprog.hpp. */
template <int N>
inline double support(const VPolytope<N>& p, const Vec<N>& d) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : p.vertices) best = std::max(best, dot(d, v));
  return best;
}

template <int N>
inline Vec<N> support_point(const VPolytope<N>& p, const Vec<N>& d) {
  int bi = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < p.size(); ++i) {
    double s = dot(d, p.vertices[i]);
    if (s > best) {
      best = s;
      bi = i;
    }
  }
  return p.vertices[bi];
}

template <int N>
inline double support(const Segment<N>& s, const Vec<N>& d) {
  return std::max(dot(d, s.base), dot(d, s.head()));
}

/* Affine rank of a point set at a length tolerance, by Gram-Schmidt with
 * column pivoting on the differences from the first point. */
template <int N>
inline int affine_rank(const std::vector<Vec<N>>& pts, double tol = 1e-7) {
  if (pts.size() <= 1) return 0;
  std::vector<Vec<N>> basis;
  for (size_t i = 1; i < pts.size(); ++i) {
    Vec<N> d = pts[i] - pts[0];
    for (const auto& b : basis) d -= b * dot(b, d);
    double n = norm(d);
    if (n > tol) {
      basis.push_back(d * (1.0 / n));
      if ((int)basis.size() == N) break;
    }
  }
  return (int)basis.size();
}

}  // namespace kakeya
