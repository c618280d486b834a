#include "kakeya/hull2d.hpp"

#include <algorithm>

#include "kakeya/linprog.hpp"

namespace kakeya {

double cross2(const Vec<2>& a, const Vec<2>& b) { return a[0] * b[1] - a[1] * b[0]; }

/* Andrew's monotone chain, see e.g. Wikibooks "Algorithm Implementation /
 * Geometry / Convex hull / Monotone chain". */
std::vector<Vec<2>> convex_hull_2d(std::vector<Vec<2>> pts) {
  if (pts.empty()) fail("DomainError", "hull of empty point set");
  double scale = 0;
  for (const auto& p : pts) {
    if (!is_finite(p)) fail("DomainError", "hull input has non-finite point");
    scale = std::max({scale, std::fabs(p[0]), std::fabs(p[1])});
  }
  std::sort(pts.begin(), pts.end(), [](const Vec<2>& a, const Vec<2>& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  double ptol = 1e-12 * (1.0 + scale);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [&](const Vec<2>& a, const Vec<2>& b) {
                          return dist(a, b) <= ptol;
                        }),
            pts.end());
  size_t n = pts.size();
  if (n <= 2) return pts;

  /* Turns flatter than this count as collinear and get dropped. */
  double eps = 1e-12 * (1.0 + scale) * (1.0 + scale);
  std::vector<Vec<2>> h(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross2(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= eps) --k;
    h[k++] = pts[i];
  }
  for (size_t i = n - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross2(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= eps) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1); /* last point equals the first */
  return h;
}

HPolytope<2> v_to_h_2d(const VPolytope<2>& vp) {
  auto hull = convex_hull_2d(vp.vertices);
  std::vector<Halfspace<2>> rows;
  if (hull.size() == 1) {
    /* A single point: two equality pairs. */
    const Vec<2>& p = hull[0];
    rows.push_back({vec2(1, 0), p[0]});
    rows.push_back({vec2(-1, 0), -p[0]});
    rows.push_back({vec2(0, 1), p[1]});
    rows.push_back({vec2(0, -1), -p[1]});
    return HPolytope<2>::from_rows(rows);
  }
  if (hull.size() == 2) {
    /* A segment: an equality pair across it plus caps along it. */
    Vec<2> d = hull[1] - hull[0];
    Vec<2> u = d * (1.0 / norm(d));
    Vec<2> n = vec2(-u[1], u[0]);
    rows.push_back({n, dot(n, hull[0])});
    rows.push_back({-n, -dot(n, hull[0])});
    rows.push_back({u, dot(u, hull[1])});
    rows.push_back({-u, -dot(u, hull[0])});
    return HPolytope<2>::from_rows(rows);
  }
  for (size_t i = 0; i < hull.size(); ++i) {
    const Vec<2>& a = hull[i];
    const Vec<2>& b = hull[(i + 1) % hull.size()];
    Vec<2> d = b - a;
    /* Outward normal of a CCW edge. */
    Vec<2> n = vec2(d[1], -d[0]);
    rows.push_back({n, dot(n, a)});
  }
  return HPolytope<2>::from_rows(rows);
}

namespace {

/* All pairwise boundary-line intersections that lie in the body; used when
 * the body is too thin for the polar-dual route. */
VPolytope<2> h_to_v_degenerate(const HPolytope<2>& hp, const Vec<2>& inside) {
  std::vector<Vec<2>> cand;
  size_t m = hp.rows.size();
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j) {
      const auto& p = hp.rows[i];
      const auto& q = hp.rows[j];
      double det = cross2(p.normal, q.normal);
      if (std::fabs(det) < 1e-12) continue;
      Vec<2> x = vec2((p.offset * q.normal[1] - q.offset * p.normal[1]) / det,
                      (q.offset * p.normal[0] - p.offset * q.normal[0]) / det);
      if (hp.contains(x, 1e-7)) cand.push_back(x);
    }
  if (cand.empty()) cand.push_back(inside);
  /* Dedupe, then hull if there is still area to speak of. */
  std::vector<Vec<2>> uniq;
  for (const auto& c : cand) {
    bool seen = false;
    for (const auto& u : uniq)
      if (dist(u, c) <= 1e-7) {
        seen = true;
        break;
      }
    if (!seen) uniq.push_back(c);
  }
  if (uniq.size() >= 3) uniq = convex_hull_2d(uniq);
  return VPolytope<2>(uniq);
}

}  // namespace

VPolytope<2> h_to_v_2d(const HPolytope<2>& hp) {
  auto ib = inscribed_ball(hp); /* throws Unbounded if it can grow forever */
  if (ib.radius < -1e-9) fail("EmptyBody", "halfspace intersection is empty");
  if (ib.radius <= 1e-9) {
    if (!is_bounded(hp)) fail("Unbounded", "halfspace intersection is unbounded");
    return h_to_v_degenerate(hp, ib.center);
  }

  /* Polar dual about the inball center: row <n, x> <= b becomes the point
   * n / (b - <n, c>), the polygon's vertices are dual to the hull's edges,
   * and rows strictly inside the dual hull are redundant. */
  std::vector<Vec<2>> dual;
  dual.reserve(hp.rows.size());
  for (const auto& h : hp.rows)
    dual.push_back(h.normal * (1.0 / (h.offset - dot(h.normal, ib.center))));
  auto dh = convex_hull_2d(dual);
  if (dh.size() < 3) fail("Unbounded", "halfspace intersection is unbounded");

  std::vector<Vec<2>> verts;
  verts.reserve(dh.size());
  for (size_t i = 0; i < dh.size(); ++i) {
    const Vec<2>& u = dh[i];
    const Vec<2>& w = dh[(i + 1) % dh.size()];
    double det = cross2(u, w);
    /* The origin sits on or outside a dual edge only when the primal
     * region recedes to infinity. */
    if (det <= 1e-12) fail("Unbounded", "halfspace intersection is unbounded");
    verts.push_back(vec2((w[1] - u[1]) / det, (u[0] - w[0]) / det) + ib.center);
  }
  return VPolytope<2>(verts);
}

}  // namespace kakeya
