#pragma once

#include <random>
#include <vector>

#include "kakeya/hull2d.hpp"
#include "kakeya/nearest.hpp"

namespace kakeya {

template <int N>
struct Ball {
  Vec<N> center{};
  double radius = 0;
};

namespace mebdetail {

/* Smallest ball through all points of r (assumed affinely independent,
 * |r| <= N+1): solve G beta = diag(G)/2 on the difference basis. */
template <int N>
Ball<N> circumball(const std::vector<Vec<N>>& r) {
  Ball<N> b;
  if (r.empty()) {
    b.radius = -1; /* nothing encloses: everything counts as outside */
    return b;
  }
  if (r.size() == 1) {
    b.center = r[0];
    return b;
  }
  int k = int(r.size()) - 1;
  std::vector<double> g(size_t(k * k)), rhs(size_t(k), 0.0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      g[size_t(i * k + j)] = dot(r[size_t(i + 1)] - r[0], r[size_t(j + 1)] - r[0]);
  for (int i = 0; i < k; ++i) rhs[size_t(i)] = 0.5 * g[size_t(i * k + i)];
  auto g2 = g;
  auto rhs2 = rhs;
  if (!nndetail::solve_dense(g2, rhs2, k)) {
    for (int i = 0; i < k; ++i) g[size_t(i * k + i)] += 1e-12;
    g2 = g;
    rhs2 = rhs;
    if (!nndetail::solve_dense(g2, rhs2, k))
      fail("DomainError", "enclosing-ball boundary set is degenerate");
  }
  b.center = r[0];
  for (int i = 0; i < k; ++i) b.center += (r[size_t(i + 1)] - r[0]) * rhs2[size_t(i)];
  b.radius = dist(b.center, r[0]);
  return b;
}

template <int N>
Ball<N> welzl(std::vector<Vec<N>>& pts, size_t n, std::vector<Vec<N>>& bnd) {
  if (n == 0 || bnd.size() == size_t(N) + 1) return circumball<N>(bnd);
  Ball<N> b = welzl<N>(pts, n - 1, bnd);
  const Vec<N>& p = pts[n - 1];
  if (dist(p, b.center) <= b.radius + 1e-10 * (1.0 + b.radius)) return b;
  bnd.push_back(p);
  b = welzl<N>(pts, n - 1, bnd);
  bnd.pop_back();
  return b;
}

}  // namespace mebdetail

/* Minimum enclosing ball, Welzl's randomized recursion ("Smallest
 * enclosing disks", LNCS 555, 1991).  The center is unique and lies in the
 * hull of the points. */
template <int N>
Ball<N> min_enclosing_ball(std::vector<Vec<N>> pts, uint64_t seed = 2718) {
  if (pts.empty()) fail("DomainError", "enclosing ball of an empty set");
  for (const auto& p : pts)
    if (!is_finite(p)) fail("DomainError", "enclosing ball of non-finite points");
  std::mt19937_64 rng(seed);
  std::shuffle(pts.begin(), pts.end(), rng);
  std::vector<Vec<N>> bnd;
  return mebdetail::welzl<N>(pts, pts.size(), bnd);
}

/* Centre of the smallest enclosing ball of a polytope: for bodies given by
 * vertices that is the enclosing ball of the vertex set. */
template <int N>
Ball<N> chebyshev_center(const VPolytope<N>& vp, uint64_t seed = 2718) {
  return min_enclosing_ball<N>(vp.vertices, seed);
}

/* 2D H-rep bodies go through vertex enumeration first. */
inline Ball<2> chebyshev_center(const HPolytope<2>& hp, uint64_t seed = 2718) {
  return chebyshev_center(h_to_v_2d(hp), seed);
}

/* Hausdorff distance between polytopes: the directed part is a maximum of
 * a convex function, so checking vertices is exact. */
template <int N>
double hausdorff(const VPolytope<N>& a, const VPolytope<N>& b) {
  double h = 0;
  for (const auto& v : a.vertices) h = std::max(h, nearest_point(b, v).distance);
  for (const auto& v : b.vertices) h = std::max(h, nearest_point(a, v).distance);
  return h;
}

inline double hausdorff(const HPolytope<2>& a, const HPolytope<2>& b) {
  return hausdorff(h_to_v_2d(a), h_to_v_2d(b));
}

}  // namespace kakeya
